//! Shared literals derived from the geometric state.

use std::collections::BTreeSet;

use crate::symbolic::{Fact, Sym};

use super::scene::{Scene, Support, TOL};
use super::sense::{min_reach_effort, visibility_at, DEFAULT_SAMPLES, EFFORTS};
use super::shapes::Polygon;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// Minimum sampled fraction for `visible`.
    pub visible: f64,
    /// Share of an object's top face another body must cover for `coveredBy`.
    pub covered: f64,
    pub samples: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            visible: 0.5,
            covered: 0.9,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Lowest efforts at which an object is visible and reachable to one agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffortRow {
    pub object: String,
    pub agent: String,
    pub visible: Option<u8>,
    pub reachable: Option<u8>,
}

pub fn effort_rows(scene: &Scene, th: &Thresholds) -> Vec<EffortRow> {
    let mut out = Vec::new();
    for o in &scene.objects {
        for a in &scene.agents {
            let visible = EFFORTS
                .into_iter()
                .find(|&e| visibility_at(scene, o, &o.pose, a, e, th.samples, &[]) >= th.visible - 1e-12);
            let reachable = min_reach_effort(o.center(), a);
            out.push(EffortRow {
                object: o.name.clone(),
                agent: a.name.clone(),
                visible,
                reachable,
            });
        }
    }
    out
}

/// `visible(O, A, E)` and `reachable(O, A, E)` at the minimal effort, support
/// relations as `on`/`inside`, and `coveredBy` for bodies hanging over ≥ the
/// covered share of an object's top face. Held objects get no support fact.
pub fn derive_facts(scene: &Scene, th: &Thresholds) -> BTreeSet<Fact> {
    let mut out = BTreeSet::new();
    let fact = |p: &str, args: &[&str]| Fact {
        pred: Sym::new(p),
        args: args.iter().map(|a| Sym::new(a)).collect(),
    };
    for row in effort_rows(scene, th) {
        if let Some(e) = row.visible {
            out.insert(fact("visible", &[&row.object, &row.agent, &e.to_string()]));
        }
        if let Some(e) = row.reachable {
            out.insert(fact("reachable", &[&row.object, &row.agent, &e.to_string()]));
        }
    }
    for o in &scene.objects {
        match &o.support {
            Support::Surface(s) | Support::Object(s) => {
                out.insert(fact("on", &[&o.name, s]));
            }
            Support::Inside(c) => {
                out.insert(fact("inside", &[&o.name, c]));
            }
            Support::Gripper(_) => {}
        }
        let top_z = o.pose.z + o.height;
        let top = o.world_footprint();
        let area = top.area();
        let mut cover = |name: &str, fp: &Polygon, z0: f64| {
            if z0 >= top_z - TOL && top.intersection_area(fp) >= th.covered * area - 1e-12 {
                out.insert(fact("coveredBy", &[&o.name, name]));
            }
        };
        for s in &scene.surfaces {
            cover(&s.name, &s.footprint, s.bottom);
        }
        for other in &scene.objects {
            if other.name != o.name {
                cover(&other.name, &other.world_footprint(), other.pose.z);
            }
        }
    }
    out
}

/// One line per agent listing each object's visibility and reach efforts.
pub fn effort_report(scene: &Scene, th: &Thresholds) -> String {
    let rows = effort_rows(scene, th);
    let mut s = String::new();
    for a in &scene.agents {
        s.push_str(&format!("For {}:", a.name));
        for r in rows.iter().filter(|r| r.agent == a.name) {
            let show = |e: Option<u8>| e.map_or("-".to_string(), |e| e.to_string());
            s.push_str(&format!(
                " {} is Vis with E={}, Reach with E={};",
                r.object,
                show(r.visible),
                show(r.reachable)
            ));
        }
        s.push('\n');
    }
    s
}
