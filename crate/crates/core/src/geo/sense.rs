//! Effort-indexed visibility and reachability.

use super::scene::{AgentModel, ObjectModel, Pose, Scene, Support, TOL};
use super::shapes::{Prism, Vec2, Vec3};
use super::GeoError;

pub const DEFAULT_SAMPLES: usize = 64;
pub const EFFORTS: [u8; 4] = [1, 2, 3, 4];

/// Base-2 radical inverse, the second Hammersley coordinate.
fn radical_inverse(mut i: u32) -> f64 {
    let mut inv = 0.5;
    let mut out = 0.0;
    while i > 0 {
        if i & 1 == 1 {
            out += inv;
        }
        inv /= 2.0;
        i >>= 1;
    }
    out
}

enum Face {
    Tri(Vec3, Vec3, Vec3),
    /// Vertical rectangle over the edge `a→b` from `z0` to `z1`.
    Side(Vec2, Vec2, f64, f64),
}

impl Face {
    fn area(&self) -> f64 {
        match self {
            Face::Tri(a, b, c) => {
                let (u, v) = (b.sub(*a), c.sub(*a));
                (u.x * v.y - u.y * v.x).abs() / 2.0
            }
            Face::Side(a, b, z0, z1) => a.dist(*b) * (z1 - z0),
        }
    }

    fn point(&self, u: f64, v: f64) -> Vec3 {
        match self {
            Face::Tri(a, b, c) => {
                let s = u.sqrt();
                let (wa, wb, wc) = (1.0 - s, s * (1.0 - v), s * v);
                Vec3::new(
                    a.x * wa + b.x * wb + c.x * wc,
                    a.y * wa + b.y * wb + c.y * wc,
                    a.z * wa + b.z * wb + c.z * wc,
                )
            }
            Face::Side(a, b, z0, z1) => {
                let p = a.lerp(*b, u);
                Vec3::new(p.x, p.y, z0 + (z1 - z0) * v)
            }
        }
    }
}

/// `k` area-weighted Hammersley points over the top and side faces of the
/// object at `pose`. The bottom face is never sampled.
pub fn sample_points(obj: &ObjectModel, pose: &Pose, k: usize) -> Vec<Vec3> {
    let fp = obj.footprint_at(pose);
    let z0 = pose.z;
    let z1 = pose.z + obj.height;
    let mut faces = Vec::new();
    let p = &fp.points;
    for i in 1..p.len().saturating_sub(1) {
        faces.push(Face::Tri(
            Vec3::new(p[0].x, p[0].y, z1),
            Vec3::new(p[i].x, p[i].y, z1),
            Vec3::new(p[i + 1].x, p[i + 1].y, z1),
        ));
    }
    for (a, b) in fp.edges() {
        faces.push(Face::Side(a, b, z0, z1));
    }
    let areas: Vec<f64> = faces.iter().map(Face::area).collect();
    let total: f64 = areas.iter().sum();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let u = (i as f64 + 0.5) / k as f64;
        let v = radical_inverse(i as u32);
        let mut acc = 0.0;
        let mut chosen = faces.len() - 1;
        let mut local = 1.0;
        for (f, a) in areas.iter().enumerate() {
            let w = a / total;
            if u < acc + w || f == faces.len() - 1 {
                chosen = f;
                local = if w > 0.0 { ((u - acc) / w).clamp(0.0, 1.0) } else { 0.5 };
                break;
            }
            acc += w;
        }
        out.push(faces[chosen].point(local, v));
    }
    out
}

/// Closed containers hide whatever they hold.
pub fn sealed(scene: &Scene, obj: &ObjectModel) -> bool {
    let mut cur = obj;
    loop {
        match &cur.support {
            Support::Inside(c) | Support::Object(c) => match scene.object(c) {
                Ok(parent) => {
                    if matches!(&cur.support, Support::Inside(_))
                        && parent.container.as_ref().is_some_and(|k| !k.open_top)
                    {
                        return true;
                    }
                    cur = parent;
                }
                Err(_) => return false,
            },
            _ => return false,
        }
    }
}

/// Fraction of sample points with an unobstructed segment to `eye`.
pub fn fraction_from(samples: &[Vec3], eye: Vec3, occluders: &[Prism]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let seen = samples
        .iter()
        .filter(|p| !occluders.iter().any(|o| o.blocks_segment(**p, eye, TOL)))
        .count();
    seen as f64 / samples.len() as f64
}

/// Visibility of `obj` at `pose` to `agent` with effort up to `effort`: the
/// best fraction over the eye points of efforts 1..=effort. Objects listed
/// in `ignore` do not occlude.
pub fn visibility_at(
    scene: &Scene,
    obj: &ObjectModel,
    pose: &Pose,
    agent: &AgentModel,
    effort: u8,
    k: usize,
    ignore: &[&str],
) -> f64 {
    if sealed(scene, obj) {
        return 0.0;
    }
    let mut exclude = vec![obj.name.as_str()];
    exclude.extend_from_slice(ignore);
    let occluders: Vec<Prism> = scene.solids(&exclude).into_iter().map(|s| s.prism).collect();
    let samples = sample_points(obj, pose, k);
    agent.eyes[..effort.clamp(1, 4) as usize]
        .iter()
        .map(|eye| fraction_from(&samples, *eye, &occluders))
        .fold(0.0, f64::max)
}

/// Whether any sample of `obj` at `pose` has a clear line to one of the
/// eye points of efforts 1..=effort. Stops at the first clear sample.
pub fn seen_at_all(
    scene: &Scene,
    obj: &ObjectModel,
    pose: &Pose,
    agent: &AgentModel,
    effort: u8,
    k: usize,
    ignore: &[&str],
) -> bool {
    if sealed(scene, obj) {
        return false;
    }
    let mut exclude = vec![obj.name.as_str()];
    exclude.extend_from_slice(ignore);
    let occluders: Vec<Prism> = scene.solids(&exclude).into_iter().map(|s| s.prism).collect();
    let samples = sample_points(obj, pose, k);
    agent.eyes[..effort.clamp(1, 4) as usize].iter().any(|eye| {
        samples
            .iter()
            .any(|p| !occluders.iter().any(|o| o.blocks_segment(*p, *eye, TOL)))
    })
}

pub fn visibility_fraction(scene: &Scene, object: &str, agent: &str, effort: u8, k: usize) -> Result<f64, GeoError> {
    let obj = scene.object(object)?;
    let ag = scene.agent(agent)?;
    Ok(visibility_at(scene, obj, &obj.pose, ag, effort, k, &[]))
}

/// Horizontal distance and height band check against efforts 1..=effort.
pub fn reach_feasible(point: Vec3, agent: &AgentModel, effort: u8) -> bool {
    (0..effort.clamp(1, 4) as usize).any(|e| {
        let [lo, hi] = agent.reach_band[e];
        point.xy().dist(agent.base) <= agent.reach[e] + TOL && point.z >= lo - TOL && point.z <= hi + TOL
    })
}

/// Lowest effort at which `point` is reachable.
pub fn min_reach_effort(point: Vec3, agent: &AgentModel) -> Option<u8> {
    EFFORTS.into_iter().find(|&e| reach_feasible(point, agent, e))
}
