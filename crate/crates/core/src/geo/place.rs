//! Placement candidates, collision tests and swept straight-line paths.

use std::f64::consts::PI;

use super::scene::{AgentModel, ObjectModel, Pose, Scene, Surface, TOL};
use super::shapes::{Polygon, Prism, Vec2, Vec3};

pub const GRID_STEP: f64 = 0.05;
pub const PATH_STEPS: usize = 10;
pub const ORIENTATIONS: usize = 8;
/// Width of the distance rings candidates are ranked by.
pub const DISTANCE_BIN: f64 = 0.15;

/// The `i`-th of eight yaw samples at 45° steps.
pub fn yaw(i: usize) -> f64 {
    i as f64 * PI / 4.0
}

/// Horizontal target area at a fixed height.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub name: String,
    pub polygon: Polygon,
    pub z: f64,
}

impl Region {
    pub fn of_surface(s: &Surface) -> Self {
        Region {
            name: s.name.clone(),
            polygon: s.footprint.clone(),
            z: s.top,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    /// Index in the grid enumeration order of all regions.
    pub id: usize,
    pub region: String,
    pub position: Vec3,
}

/// Grid positions of a region at step `GRID_STEP`, starting at the lower
/// corner of its bounding box.
pub fn grid_points(region: &Region) -> Vec<Vec2> {
    let (lo, hi) = region.polygon.bounds();
    let nx = ((hi.x - lo.x) / GRID_STEP + 1e-6).floor() as usize;
    let ny = ((hi.y - lo.y) / GRID_STEP + 1e-6).floor() as usize;
    let mut out = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            let p = Vec2::new(lo.x + i as f64 * GRID_STEP, lo.y + j as f64 * GRID_STEP);
            if region.polygon.contains(p, TOL) {
                out.push(p);
            }
        }
    }
    out
}

/// Solid pieces of `obj` at `pose` overlap nothing else in the scene. Objects
/// named in `ignore`, the object itself and anything it carries are skipped.
pub fn collision_free(scene: &Scene, obj: &ObjectModel, pose: &Pose, ignore: &[&str]) -> bool {
    let mut exclude = vec![obj.name.as_str()];
    exclude.extend(scene.contents(&obj.name));
    exclude.extend_from_slice(ignore);
    let others = scene.solids(&exclude);
    obj.solids_at(pose)
        .iter()
        .all(|mine| others.iter().all(|s| !mine.overlaps(&s.prism, TOL)))
}

pub fn prisms_free(scene: &Scene, prisms: &[Prism], exclude: &[&str]) -> bool {
    let others = scene.solids(exclude);
    prisms.iter().all(|p| others.iter().all(|s| !p.overlaps(&s.prism, TOL)))
}

/// Footprint inside the region and free of collisions.
pub fn fits(scene: &Scene, obj: &ObjectModel, pose: &Pose, region: &Region) -> bool {
    region.polygon.contains_polygon(&obj.footprint_at(pose), TOL) && collision_free(scene, obj, pose, &[])
}

fn place_pose(region: &Region, p: Vec2, yaw: f64) -> Pose {
    Pose {
        x: p.x,
        y: p.y,
        z: region.z,
        yaw,
    }
}

/// Cheap occlusion estimate: how many other objects would lose the segment
/// from their center to the viewer's resting eye.
pub fn occlusion_count(scene: &Scene, obj: &ObjectModel, pose: &Pose, viewer: &AgentModel) -> usize {
    let me = obj.prism_at(pose);
    let carried = scene.contents(&obj.name);
    scene
        .objects
        .iter()
        .filter(|o| o.name != obj.name && !carried.contains(&o.name.as_str()))
        .filter(|o| me.blocks_segment(o.center(), viewer.eyes[0], TOL))
        .count()
}

/// Candidate positions over `regions`, best first. A grid position counts
/// when some orientation fits. Ordering is lexicographic over (distance to
/// `preferred` in `DISTANCE_BIN` rings, cheap occlusion count, closeness to
/// the region edge), ties kept in grid order.
pub fn placement_candidates(
    scene: &Scene,
    obj: &ObjectModel,
    regions: &[Region],
    preferred: Vec2,
    viewer: Option<&AgentModel>,
) -> Vec<Candidate> {
    let mut scored = Vec::new();
    let mut id = 0;
    for region in regions {
        for p in grid_points(region) {
            let this = id;
            id += 1;
            let Some(pose) = (0..ORIENTATIONS)
                .map(|k| place_pose(region, p, yaw(k)))
                .find(|pose| fits(scene, obj, pose, region))
            else {
                continue;
            };
            let bin = (p.dist(preferred) / DISTANCE_BIN + 1e-9).floor() as i64;
            let occ = viewer.map_or(0, |v| occlusion_count(scene, obj, &pose, v));
            let edge = -(region.polygon.edge_distance(p) * 1e6).round() as i64;
            scored.push((
                (bin, occ, edge),
                Candidate {
                    id: this,
                    region: region.name.clone(),
                    position: Vec3::new(p.x, p.y, region.z),
                },
            ));
        }
    }
    scored.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.id.cmp(&b.1.id)));
    scored.into_iter().map(|(_, c)| c).collect()
}

fn lerp_angle(a: f64, b: f64, t: f64) -> f64 {
    let mut d = (b - a) % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d < -PI {
        d += 2.0 * PI;
    }
    a + d * t
}

pub fn lerp_pose(a: &Pose, b: &Pose, t: f64) -> Pose {
    Pose {
        x: a.x + (b.x - a.x) * t,
        y: a.y + (b.y - a.y) * t,
        z: a.z + (b.z - a.z) * t,
        yaw: lerp_angle(a.yaw, b.yaw, t),
    }
}

/// Straight-line motion of the gripper (holding `obj` when `carry`) between
/// two object-frame configurations, tested at `steps + 1` interpolated poses.
pub fn path_feasible_steps(
    scene: &Scene,
    obj: &ObjectModel,
    grasp: usize,
    carry: bool,
    from: &Pose,
    to: &Pose,
    steps: usize,
) -> bool {
    let mut exclude = vec![];
    if carry {
        exclude.push(obj.name.as_str());
        exclude.extend(scene.contents(&obj.name));
    }
    let others = scene.solids(&exclude);
    (0..=steps).all(|i| {
        let pose = lerp_pose(from, to, i as f64 / steps as f64);
        let mut moving = vec![obj.gripper_at(grasp, &pose)];
        if carry {
            moving.extend(obj.solids_at(&pose));
        }
        moving.iter().all(|m| others.iter().all(|s| !m.overlaps(&s.prism, TOL)))
    })
}

pub fn path_feasible(scene: &Scene, obj: &ObjectModel, grasp: usize, carry: bool, from: &Pose, to: &Pose) -> bool {
    path_feasible_steps(scene, obj, grasp, carry, from, to, PATH_STEPS)
}
