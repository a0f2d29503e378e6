use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::shapes::{Polygon, Prism, Vec2, Vec3};
use super::GeoError;

/// Overlap tolerance used for every footprint and prism test.
pub const TOL: f64 = 1e-7;

fn yes() -> bool {
    true
}

/// Horizontal slab between `bottom` and `top`. Non-placeable slabs act as
/// walls or screens.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub name: String,
    pub footprint: Polygon,
    pub bottom: f64,
    pub top: f64,
    #[serde(default = "yes")]
    pub placeable: bool,
}

impl Surface {
    pub fn prism(&self) -> Prism {
        Prism::new(self.footprint.clone(), self.bottom, self.top)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Container {
    pub wall: f64,
    #[serde(default = "yes")]
    pub open_top: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grasp {
    pub id: String,
    /// Side from which the gripper closes, in the object frame.
    pub approach: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "of", rename_all = "snake_case")]
pub enum Support {
    Surface(String),
    Object(String),
    Inside(String),
    Gripper(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    /// Height of the object's base.
    pub z: f64,
    pub yaw: f64,
}

impl Pose {
    pub fn xy(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectModel {
    pub name: String,
    #[serde(default)]
    pub class: String,
    /// Footprint in the object frame.
    pub footprint: Polygon,
    pub height: f64,
    pub pose: Pose,
    pub support: Support,
    #[serde(default)]
    pub heavy: bool,
    #[serde(default)]
    pub container: Option<Container>,
    /// The local +x axis is a front that facing constraints refer to.
    #[serde(default)]
    pub has_front: bool,
    #[serde(default = "canonical_grasps")]
    pub grasps: Vec<Grasp>,
    /// Grasp in use while held.
    #[serde(default)]
    pub held_grasp: Option<usize>,
}

/// Four side grasps in declaration order: +x, −x, +y, −y.
pub fn canonical_grasps() -> Vec<Grasp> {
    [("px", 1.0, 0.0), ("nx", -1.0, 0.0), ("py", 0.0, 1.0), ("ny", 0.0, -1.0)]
        .into_iter()
        .map(|(id, x, y)| Grasp {
            id: id.to_string(),
            approach: Vec2::new(x, y),
        })
        .collect()
}

/// Gripper finger block thickness along the approach direction.
pub const GRIPPER_DEPTH: f64 = 0.04;
/// Half width of the gripper block across the approach direction.
pub const GRIPPER_HALF_WIDTH: f64 = 0.03;

impl ObjectModel {
    pub fn footprint_at(&self, pose: &Pose) -> Polygon {
        self.footprint.transformed(pose.xy(), pose.yaw)
    }

    pub fn world_footprint(&self) -> Polygon {
        self.footprint_at(&self.pose)
    }

    pub fn prism_at(&self, pose: &Pose) -> Prism {
        Prism::new(self.footprint_at(pose), pose.z, pose.z + self.height)
    }

    pub fn prism(&self) -> Prism {
        self.prism_at(&self.pose)
    }

    pub fn center(&self) -> Vec3 {
        let c = self.world_footprint().centroid();
        Vec3::new(c.x, c.y, self.pose.z + self.height / 2.0)
    }

    /// Solid pieces at `pose`: one prism, or floor and walls for a container.
    pub fn solids_at(&self, pose: &Pose) -> Vec<Prism> {
        let Some(c) = &self.container else {
            return vec![self.prism_at(pose)];
        };
        let (lo, hi) = self.footprint.bounds();
        let w = c.wall;
        let z0 = pose.z;
        let z1 = pose.z + self.height;
        let part = |a: Vec2, b: Vec2, za: f64, zb: f64| {
            Prism::new(Polygon::from_bounds(a, b).transformed(pose.xy(), pose.yaw), za, zb)
        };
        let mut out = vec![
            part(lo, hi, z0, z0 + w),
            part(lo, Vec2::new(lo.x + w, hi.y), z0, z1),
            part(Vec2::new(hi.x - w, lo.y), hi, z0, z1),
            part(Vec2::new(lo.x + w, lo.y), Vec2::new(hi.x - w, lo.y + w), z0, z1),
            part(Vec2::new(lo.x + w, hi.y - w), Vec2::new(hi.x - w, hi.y), z0, z1),
        ];
        if !c.open_top {
            out.push(part(lo, hi, z1 - w, z1));
        }
        out
    }

    /// Floor polygon of a container's cavity in world coordinates.
    pub fn cavity_at(&self, pose: &Pose) -> Option<(Polygon, f64)> {
        let c = self.container.as_ref()?;
        let (lo, hi) = self.footprint.bounds();
        let w = c.wall;
        let poly = Polygon::from_bounds(Vec2::new(lo.x + w, lo.y + w), Vec2::new(hi.x - w, hi.y - w));
        Some((poly.transformed(pose.xy(), pose.yaw), pose.z + w))
    }

    /// Gripper block for grasp `g` with the object at `pose`.
    pub fn gripper_at(&self, g: usize, pose: &Pose) -> Prism {
        let a = self.grasps[g].approach;
        let a = a.scale(1.0 / a.norm());
        let side = Vec2::new(-a.y, a.x);
        let reach = self
            .footprint
            .points
            .iter()
            .map(|p| p.dot(a))
            .fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = self
            .footprint
            .points
            .iter()
            .map(|p| p.dot(side))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
        let half = GRIPPER_HALF_WIDTH.min((hi - lo) / 2.0);
        let mid = (hi + lo) / 2.0;
        let corner = |along: f64, across: f64| a.scale(along).add(side.scale(across));
        let local = Polygon::new(vec![
            corner(reach, mid - half),
            corner(reach + GRIPPER_DEPTH, mid - half),
            corner(reach + GRIPPER_DEPTH, mid + half),
            corner(reach, mid + half),
        ]);
        Prism::new(
            local.transformed(pose.xy(), pose.yaw),
            pose.z + 0.1 * self.height,
            pose.z + self.height,
        )
    }

    /// Unit vector of the object's front at `pose`.
    pub fn front_at(&self, pose: &Pose) -> Vec2 {
        Vec2::new(1.0, 0.0).rotate(pose.yaw)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentKind {
    Robot,
    Human,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentModel {
    pub name: String,
    pub kind: AgentKind,
    pub base: Vec2,
    /// Eye point per effort level 1..=4.
    pub eyes: [Vec3; 4],
    /// Horizontal reach radius per effort level.
    pub reach: [f64; 4],
    /// Reachable height band `[low, high]` per effort level.
    pub reach_band: [[f64; 2]; 4],
    /// Where a held object sits before any placement.
    pub hand: Vec3,
}

/// A named point in free space, e.g. where objects are shown or handed over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zone {
    pub name: String,
    pub point: Vec3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(default)]
    pub version: u64,
    #[serde(default)]
    pub surfaces: Vec<Surface>,
    #[serde(default)]
    pub objects: Vec<ObjectModel>,
    #[serde(default)]
    pub agents: Vec<AgentModel>,
    #[serde(default)]
    pub zones: Vec<Zone>,
    /// Preferred point for placements handed to a human.
    #[serde(default)]
    pub exchange_point: Option<Vec2>,
    /// Task kind name → surfaces allowed as targets. Missing kinds may use
    /// every placeable surface.
    #[serde(default)]
    pub regions: BTreeMap<String, Vec<String>>,
}

/// A solid owned by a named scene element.
#[derive(Clone, Debug)]
pub struct Solid<'a> {
    pub owner: &'a str,
    pub prism: Prism,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Scene, GeoError> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| GeoError::Json(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn object(&self, name: &str) -> Result<&ObjectModel, GeoError> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .ok_or_else(|| GeoError::UnknownObject(name.to_string()))
    }

    pub fn object_mut(&mut self, name: &str) -> Result<&mut ObjectModel, GeoError> {
        self.objects
            .iter_mut()
            .find(|o| o.name == name)
            .ok_or_else(|| GeoError::UnknownObject(name.to_string()))
    }

    pub fn agent(&self, name: &str) -> Result<&AgentModel, GeoError> {
        self.agents
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| GeoError::UnknownAgent(name.to_string()))
    }

    pub fn surface(&self, name: &str) -> Result<&Surface, GeoError> {
        self.surfaces
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| GeoError::UnknownSurface(name.to_string()))
    }

    pub fn zone(&self, name: &str) -> Result<&Zone, GeoError> {
        self.zones
            .iter()
            .find(|z| z.name == name)
            .ok_or_else(|| GeoError::UnknownSurface(name.to_string()))
    }

    pub fn robot(&self) -> Result<&AgentModel, GeoError> {
        self.agents
            .iter()
            .find(|a| a.kind == AgentKind::Robot)
            .ok_or_else(|| GeoError::UnknownAgent("robot".into()))
    }

    /// Object held by `agent`, if any.
    pub fn held_by(&self, agent: &str) -> Option<&ObjectModel> {
        self.objects
            .iter()
            .find(|o| matches!(&o.support, Support::Gripper(a) if a == agent))
    }

    /// Every solid except those owned by names in `exclude`.
    pub fn solids(&self, exclude: &[&str]) -> Vec<Solid<'_>> {
        let mut out = Vec::new();
        for s in &self.surfaces {
            if !exclude.contains(&s.name.as_str()) {
                out.push(Solid {
                    owner: &s.name,
                    prism: s.prism(),
                });
            }
        }
        for o in &self.objects {
            if exclude.contains(&o.name.as_str()) {
                continue;
            }
            for prism in o.solids_at(&o.pose) {
                out.push(Solid { owner: &o.name, prism });
            }
        }
        out
    }

    /// Objects resting inside `container`, transitively.
    pub fn contents(&self, container: &str) -> Vec<&str> {
        let mut out = Vec::new();
        let mut frontier = vec![container.to_string()];
        while let Some(c) = frontier.pop() {
            for o in &self.objects {
                if matches!(&o.support, Support::Inside(x) | Support::Object(x) if *x == c) {
                    out.push(o.name.as_str());
                    frontier.push(o.name.clone());
                }
            }
        }
        out
    }

    /// Stable hash of the full scene content, version included.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        serde_json::to_string(self).expect("scene serializes").hash(&mut h);
        h.finish()
    }

    pub fn validate(&self) -> Result<(), GeoError> {
        let invalid = |m: String| Err(GeoError::Invalid(m));
        let mut names = std::collections::BTreeSet::new();
        for n in self
            .surfaces
            .iter()
            .map(|s| &s.name)
            .chain(self.objects.iter().map(|o| &o.name))
            .chain(self.agents.iter().map(|a| &a.name))
        {
            if !names.insert(n.as_str()) {
                return invalid(format!("duplicate scene name {n}"));
            }
        }
        for a in &self.agents {
            if !a.reach.windows(2).all(|w| w[0] < w[1]) {
                return invalid(format!("reach radii of {} must be strictly increasing", a.name));
            }
            for w in a.reach_band.windows(2) {
                if w[1][0] > w[0][0] || w[1][1] < w[0][1] {
                    return invalid(format!("reach bands of {} must be nested", a.name));
                }
            }
            let holding = self
                .objects
                .iter()
                .filter(|o| matches!(&o.support, Support::Gripper(g) if *g == a.name))
                .count();
            if holding > 1 {
                return invalid(format!("{} holds {holding} objects", a.name));
            }
        }
        for o in &self.objects {
            if o.grasps.is_empty() {
                return invalid(format!("{} has no grasps", o.name));
            }
            if o.height <= 0.0 || o.footprint.points.len() < 3 {
                return invalid(format!("{} has a degenerate shape", o.name));
            }
            match &o.support {
                Support::Surface(s) => {
                    let s = self.surface(s)?;
                    if (o.pose.z - s.top).abs() > 1e-6 {
                        return invalid(format!("{} does not rest on {}", o.name, s.name));
                    }
                }
                Support::Object(p) => {
                    let p = self.object(p)?;
                    if (o.pose.z - (p.pose.z + p.height)).abs() > 1e-6 {
                        return invalid(format!("{} does not rest on {}", o.name, p.name));
                    }
                }
                Support::Inside(c) => {
                    let c = self.object(c)?;
                    if c.container.is_none() {
                        return invalid(format!("{} is not a container", c.name));
                    }
                }
                Support::Gripper(a) => {
                    self.agent(a)?;
                }
            }
        }
        let solids = self.solids(&[]);
        for (i, a) in solids.iter().enumerate() {
            for b in &solids[i + 1..] {
                if a.owner != b.owner && a.prism.overlaps(&b.prism, TOL) {
                    return invalid(format!("{} overlaps {}", a.owner, b.owner));
                }
            }
        }
        Ok(())
    }
}
