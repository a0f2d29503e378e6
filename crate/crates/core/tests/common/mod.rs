//! Fixtures shared by the integration test targets.
#![allow(dead_code)]

pub mod bench;
pub mod compound;
pub mod htn_random;
pub mod memo;
pub mod scenarios;
pub mod sound;
pub mod visibility;

use htngtp::symbolic::HtnDomain;

/// Methods of the receptionist domain: name, head, precondition, body.
pub const TABLE_I_METHODS: [(&str, &str, &str, &str); 10] = [
    (
        "m1",
        "(MANAGEORDER ?m)",
        "(and (held ?b ?m))",
        "(LEND ?m) (TAKEPAYMENT ?m)",
    ),
    ("m2", "(LEND ?m)", "(forall (?b book) (not (held ?b ?m)))", ""),
    (
        "m3",
        "(LEND ?m)",
        "(and (held ?b ?m) (title ?b ?t))",
        "(PICK ?b) (SAY ?t) (MAKEBKACC ?b ?m) (ADD ?b ?m) (LEND ?m)",
    ),
    (
        "m4",
        "(LEND ?m)",
        "(and (held ?b ?m) (title ?b ?t) (not (hvy ?b)))",
        "(DISPLAY ?b ?t ?m) (GIVEBK ?b ?m) (WAITTAKE ?b ?m) (ADD ?b ?m) (LEND ?m)",
    ),
    ("m5", "(DISPLAY ?b ?t ?m)", "()", "(PICK ?b) (SHOW ?b ?m) (SAY ?t)"),
    (
        "m6",
        "(TAKEPAYMENT ?m)",
        "(and (numLent ?m ?n) (cost ?k))",
        "(DEBITACC ?m (* ?n ?k))",
    ),
    (
        "m7",
        "(TAKEPAYMENT ?m)",
        "(and (numLent ?m ?n) (cred ?m ?c) (cost ?k) (< ?c (* ?n ?k)))",
        "(PLACEPOSM) (PUTAWAYPOSM ?m) (EMAIL ?m)",
    ),
    (
        "m8",
        "(PLACEPOSM)",
        "(and (reachable mac pr2 ?e) (<= ?e 2))",
        "(PICK mac) (SAY swipe) (PUTON mac stnd)",
    ),
    (
        "m9",
        "(PLACEPOSM)",
        "()",
        "(NAVTO mac) (PICK mac) (NAVTO desk) (SAY swipe) (PUTON mac stnd)",
    ),
    (
        "m10",
        "(PUTAWAYPOSM ?m)",
        "()",
        "(SAY thank) (PICK mac) (PUTAWAY mac ?m)",
    ),
];

/// Operators: name, parameters, precondition, add list, delete list, linked
/// geometric task.
pub type OperatorRow = (
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    Option<&'static str>,
);

pub const TABLE_I_OPERATORS: [OperatorRow; 12] = [
    ("SAY", "?t", "()", "(spoke ?t)", "", None),
    (
        "MAKEBKACC",
        "?b ?m",
        "(and (held ?b ?m) (? makeAcc ?b ?m))",
        "(lent ?b ?m)",
        "(held ?b ?m)",
        Some("makeAcc"),
    ),
    (
        "WAITTAKE",
        "?b ?m",
        "(and (held ?b ?m) (gave ?b ?m))",
        "(lent ?b ?m)",
        "(held ?b ?m) (gave ?b ?m)",
        None,
    ),
    (
        "ADD",
        "?b ?m",
        "(and (lent ?b ?m) (numLent ?m ?n))",
        "(numLent ?m (+ ?n 1))",
        "(numLent ?m ?n)",
        None,
    ),
    (
        "GIVEBK",
        "?b ?m",
        "(and (held ?b ?m) (? give ?b ?m) (not (hvy ?b)))",
        "(gave ?b ?m)",
        "",
        Some("give"),
    ),
    ("PICK", "?o", "(and (? pick ?o))", "", "", Some("pick")),
    ("SHOW", "?o ?m", "(and (? show ?o ?m))", "", "", Some("show")),
    (
        "DEBITACC",
        "?m ?cost",
        "(and (cred ?m ?c) (>= ?c ?cost))",
        "(cred ?m (- ?c ?cost))",
        "(cred ?m ?c)",
        None,
    ),
    ("EMAIL", "?m", "(and (lent ?b ?m))", "(emailed ?m)", "", None),
    ("PUTON", "?o1 ?o2", "(and (? putOn ?o1 ?o2))", "", "", Some("putOn")),
    ("PUTAWAY", "?o ?m", "(and (? putAway ?o ?m))", "", "", Some("putAway")),
    ("NAVTO", "?obj", "(and (? navTo ?obj))", "", "", Some("navTo")),
];

fn joined<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Every difference between `d` and the table, one line each.
pub fn table_i_differences(d: &HtnDomain) -> Vec<String> {
    let mut out = vec![];
    if d.methods().len() != TABLE_I_METHODS.len() {
        out.push(format!("{} methods", d.methods().len()));
    }
    if d.operators().len() != TABLE_I_OPERATORS.len() {
        out.push(format!("{} operators", d.operators().len()));
    }
    for (i, (name, head, pre, body)) in TABLE_I_METHODS.iter().enumerate() {
        let Some(m) = d.methods().get(i) else {
            continue;
        };
        let got_head = if m.params.is_empty() {
            format!("({})", m.task)
        } else {
            format!("({} {})", m.task, joined(&m.params))
        };
        let got = (m.name.to_string(), got_head, m.pre.to_string(), joined(&m.body));
        let want = (name.to_string(), head.to_string(), pre.to_string(), body.to_string());
        if got != want {
            out.push(format!("method {i}: got {got:?}, want {want:?}"));
        }
    }
    for (i, (name, params, pre, add, del, gtp)) in TABLE_I_OPERATORS.iter().enumerate() {
        let Some(op) = d.operators().get(i) else {
            continue;
        };
        let ps: Vec<String> = op.params.iter().map(|p| format!("?{p}")).collect();
        let got = (
            op.name.to_string(),
            ps.join(" "),
            op.pre.to_string(),
            joined(&op.add),
            joined(&op.del),
            op.gtp.as_ref().map(|g| g.to_string()),
        );
        let want = (
            name.to_string(),
            params.to_string(),
            pre.to_string(),
            add.to_string(),
            del.to_string(),
            gtp.map(str::to_string),
        );
        if got != want {
            out.push(format!("operator {i}: got {got:?}, want {want:?}"));
        }
    }
    out
}

pub mod geo {
    use std::collections::BTreeMap;

    use htngtp::geo::{
        canonical_grasps, AgentKind, AgentModel, ObjectModel, Polygon, Pose, Scene, Support, Surface, Vec2, Vec3,
    };

    pub fn slab(name: &str, lo: (f64, f64), hi: (f64, f64), z: (f64, f64), placeable: bool) -> Surface {
        Surface {
            name: name.into(),
            footprint: Polygon::from_bounds(Vec2::new(lo.0, lo.1), Vec2::new(hi.0, hi.1)),
            bottom: z.0,
            top: z.1,
            placeable,
        }
    }

    pub fn block(name: &str, size: (f64, f64, f64), at: (f64, f64, f64), on: &str) -> ObjectModel {
        ObjectModel {
            name: name.into(),
            class: "block".into(),
            footprint: Polygon::rect(size.0, size.1),
            height: size.2,
            pose: Pose {
                x: at.0,
                y: at.1,
                z: at.2,
                yaw: 0.0,
            },
            support: Support::Surface(on.into()),
            heavy: false,
            container: None,
            has_front: false,
            grasps: canonical_grasps(),
            held_grasp: None,
        }
    }

    /// An agent whose four effort levels share one eye point.
    pub fn person(name: &str, kind: AgentKind, base: (f64, f64), eye: Vec3, reach: [f64; 4]) -> AgentModel {
        AgentModel {
            name: name.into(),
            kind,
            base: Vec2::new(base.0, base.1),
            eyes: [eye; 4],
            reach,
            reach_band: [[0.0, 2.0]; 4],
            hand: Vec3::new(base.0, base.1, 1.0),
        }
    }

    pub fn scene(surfaces: Vec<Surface>, objects: Vec<ObjectModel>, agents: Vec<AgentModel>) -> Scene {
        Scene {
            version: 0,
            surfaces,
            objects,
            agents,
            zones: vec![],
            exchange_point: None,
            regions: BTreeMap::new(),
        }
    }

    /// Axis-aligned box `[lo, hi]`.
    #[derive(Clone, Copy, Debug)]
    pub struct Aabb {
        pub lo: Vec3,
        pub hi: Vec3,
    }

    fn rect_bounds(p: &Polygon) -> (Vec2, Vec2) {
        assert_eq!(p.points.len(), 4, "oracle handles rectangles only");
        for i in 0..4 {
            let (a, b) = (p.points[i], p.points[(i + 1) % 4]);
            assert!(
                (a.x - b.x).abs() < 1e-12 || (a.y - b.y).abs() < 1e-12,
                "rectangle not axis aligned"
            );
        }
        let xs = p.points.iter().map(|q| q.x);
        let ys = p.points.iter().map(|q| q.y);
        (
            Vec2::new(
                xs.clone().fold(f64::INFINITY, f64::min),
                ys.clone().fold(f64::INFINITY, f64::min),
            ),
            Vec2::new(
                xs.fold(f64::NEG_INFINITY, f64::max),
                ys.fold(f64::NEG_INFINITY, f64::max),
            ),
        )
    }

    /// Boxes of every surface and of every object except `skip`.
    pub fn boxes(scene: &Scene, skip: &str) -> Vec<Aabb> {
        let mut out = vec![];
        for s in &scene.surfaces {
            let (lo, hi) = rect_bounds(&s.footprint);
            out.push(Aabb {
                lo: Vec3::new(lo.x, lo.y, s.bottom),
                hi: Vec3::new(hi.x, hi.y, s.top),
            });
        }
        for o in scene.objects.iter().filter(|o| o.name != skip) {
            let (lo, hi) = rect_bounds(&o.world_footprint());
            out.push(Aabb {
                lo: Vec3::new(lo.x, lo.y, o.pose.z),
                hi: Vec3::new(hi.x, hi.y, o.pose.z + o.height),
            });
        }
        out
    }

    /// Slab test: does the open segment `a→b` pass through the interior of
    /// the box shrunk by `eps`?
    pub fn crosses(a: Vec3, b: Vec3, bx: &Aabb, eps: f64) -> bool {
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (p, q, lo, hi) in [
            (a.x, b.x, bx.lo.x + eps, bx.hi.x - eps),
            (a.y, b.y, bx.lo.y + eps, bx.hi.y - eps),
            (a.z, b.z, bx.lo.z + eps, bx.hi.z - eps),
        ] {
            let d = q - p;
            if d.abs() < 1e-15 {
                if p <= lo || p >= hi {
                    return false;
                }
                continue;
            }
            let (mut u, mut v) = ((lo - p) / d, (hi - p) / d);
            if u > v {
                std::mem::swap(&mut u, &mut v);
            }
            t0 = t0.max(u);
            t1 = t1.min(v);
            if t0 >= t1 {
                return false;
            }
        }
        true
    }

    pub fn oracle_fraction(points: &[Vec3], eye: Vec3, boxes: &[Aabb]) -> f64 {
        let seen = points
            .iter()
            .filter(|p| !boxes.iter().any(|b| crosses(**p, eye, b, 1e-9)))
            .count();
        seen as f64 / points.len() as f64
    }
}

/// A small square block beside a walled pen that fits it with 1 cm to spare
/// on each side. Gripper fingers are 4 cm deep, so a wall left in place
/// blocks every grasp that closes from its side.
pub mod pen {
    use std::collections::BTreeSet;

    use htngtp::geo::{yaw, AgentKind, Scene, Vec2, Vec3, GRID_STEP, GRIPPER_DEPTH, GRIPPER_HALF_WIDTH, ORIENTATIONS};

    use super::geo::{block, person, scene, slab, Aabb};

    pub const SIDE: f64 = 0.08;
    pub const HEIGHT: f64 = 0.2;
    pub const TOP: f64 = 0.7;
    pub const WALL_TOP: f64 = 0.74;
    pub const PEN_LO: (f64, f64) = (0.35, 0.25);
    pub const PEN_HI: (f64, f64) = (0.45, 0.35);

    // The oracle assumes the lifted carry passes over the walls.
    const _: () = assert!(WALL_TOP < TOP + 0.05);

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Wall {
        West,
        East,
        South,
        North,
    }

    pub const ALL: [Wall; 4] = [Wall::West, Wall::East, Wall::South, Wall::North];

    fn wall_bounds(w: Wall) -> ((f64, f64), (f64, f64)) {
        let (t, m) = (0.02, 0.02);
        match w {
            Wall::West => ((PEN_LO.0 - t, PEN_LO.1 - m), (PEN_LO.0, PEN_HI.1 + m)),
            Wall::East => ((PEN_HI.0, PEN_LO.1 - m), (PEN_HI.0 + t, PEN_HI.1 + m)),
            Wall::South => ((PEN_LO.0, PEN_LO.1 - t), (PEN_HI.0, PEN_LO.1)),
            Wall::North => ((PEN_LO.0, PEN_HI.1), (PEN_HI.0, PEN_HI.1 + t)),
        }
    }

    pub fn pen_scene(walls: &[Wall]) -> Scene {
        let robot = person(
            "r",
            AgentKind::Robot,
            (0.0, 0.0),
            Vec3::new(0.0, 0.0, 1.2),
            [0.6, 0.8, 1.0, 1.2],
        );
        let mut surfaces = vec![
            slab("table", (0.3, -0.2), (0.5, 0.1), (0.0, TOP), true),
            slab("pen", PEN_LO, PEN_HI, (0.0, TOP), true),
        ];
        for (i, w) in walls.iter().enumerate() {
            let (lo, hi) = wall_bounds(*w);
            surfaces.push(slab(&format!("wall{i}"), lo, hi, (0.0, WALL_TOP), false));
        }
        scene(
            surfaces,
            vec![block("o", (SIDE, SIDE, HEIGHT), (0.4, -0.05, TOP), "table")],
            vec![robot],
        )
    }

    fn overlap(a: &Aabb, b: &Aabb, tol: f64) -> bool {
        a.lo.x < b.hi.x - tol
            && b.lo.x < a.hi.x - tol
            && a.lo.y < b.hi.y - tol
            && b.lo.y < a.hi.y - tol
            && a.lo.z < b.hi.z - tol
            && b.lo.z < a.hi.z - tol
    }

    /// Every (grasp, grid x, grid y, orientation) that puts the block in the
    /// pen with neither block nor fingers touching a wall, in millimetres.
    /// Picking from the open table always works and the lifted carry clears
    /// the walls, so only the final pose decides.
    pub fn joint_oracle(walls: &[Wall]) -> BTreeSet<(usize, i64, i64, usize)> {
        let boxes: Vec<Aabb> = walls
            .iter()
            .map(|w| {
                let (lo, hi) = wall_bounds(*w);
                Aabb {
                    lo: Vec3::new(lo.0, lo.1, 0.0),
                    hi: Vec3::new(hi.0, hi.1, WALL_TOP),
                }
            })
            .collect();
        let approaches = [
            Vec2::new(1.0, 0.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, -1.0),
        ];
        let h = SIDE / 2.0;
        let mut out = BTreeSet::new();
        let n = ((PEN_HI.0 - PEN_LO.0) / GRID_STEP + 1e-6).floor() as usize;
        let m = ((PEN_HI.1 - PEN_LO.1) / GRID_STEP + 1e-6).floor() as usize;
        for i in 0..=n {
            for j in 0..=m {
                let c = Vec2::new(PEN_LO.0 + i as f64 * GRID_STEP, PEN_LO.1 + j as f64 * GRID_STEP);
                for k in 0..ORIENTATIONS {
                    let corners =
                        [(h, h), (-h, h), (-h, -h), (h, -h)].map(|(x, y)| c.add(Vec2::new(x, y).rotate(yaw(k))));
                    let inside = corners.iter().all(|p| {
                        p.x >= PEN_LO.0 - 1e-9
                            && p.x <= PEN_HI.0 + 1e-9
                            && p.y >= PEN_LO.1 - 1e-9
                            && p.y <= PEN_HI.1 + 1e-9
                    });
                    if !inside {
                        continue;
                    }
                    // Only quarter turns fit, so every box below is axis aligned.
                    assert!(k % 2 == 0);
                    let body = Aabb {
                        lo: Vec3::new(c.x - h, c.y - h, TOP),
                        hi: Vec3::new(c.x + h, c.y + h, TOP + HEIGHT),
                    };
                    if boxes.iter().any(|b| overlap(&body, b, 1e-7)) {
                        continue;
                    }
                    for (g, a) in approaches.iter().enumerate() {
                        let d = a.rotate(yaw(k));
                        let s = Vec2::new(-d.y, d.x);
                        let p0 = c.add(d.scale(h)).add(s.scale(GRIPPER_HALF_WIDTH));
                        let p1 = c.add(d.scale(h + GRIPPER_DEPTH)).sub(s.scale(GRIPPER_HALF_WIDTH));
                        let fingers = Aabb {
                            lo: Vec3::new(p0.x.min(p1.x), p0.y.min(p1.y), TOP + 0.1 * HEIGHT),
                            hi: Vec3::new(p0.x.max(p1.x), p0.y.max(p1.y), TOP + HEIGHT),
                        };
                        if !boxes.iter().any(|b| overlap(&fingers, b, 1e-7)) {
                            out.insert(g_key(g, c, k));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn g_key(g: usize, c: Vec2, k: usize) -> (usize, i64, i64, usize) {
        (g, (c.x * 1000.0).round() as i64, (c.y * 1000.0).round() as i64, k)
    }
}
