//! Reception desk scenes: a PR2-like robot behind a platform, a seated
//! member on the other side, books on a side table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geo::{
    canonical_grasps, AgentKind, AgentModel, ObjectModel, Polygon, Pose, Scene, Support, Surface, Vec2, Vec3, Zone,
};

use super::LibrarianError;

pub const ROBOT: &str = "pr2";
pub const MEMBER: &str = "m";
pub const GREY: &str = "grey";
pub const WHITE: &str = "white";
pub const POS: &str = "mac";
pub const STAND: &str = "stnd";

/// Height of every table-like surface.
const TABLE_TOP: f64 = 0.72;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    ReceptionOpen,
    ReceptionCramped,
    /// The cramped desk with a lamp hanging where books are handed over.
    ReceptionCrampedBlocked,
    CalibrationFig5,
    ExperimentV,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::ReceptionOpen,
        Variant::ReceptionCramped,
        Variant::ReceptionCrampedBlocked,
        Variant::CalibrationFig5,
        Variant::ExperimentV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::ReceptionOpen => "reception-open",
            Variant::ReceptionCramped => "reception-cramped",
            Variant::ReceptionCrampedBlocked => "reception-cramped-blocked",
            Variant::CalibrationFig5 => "calibration-fig5",
            Variant::ExperimentV => "experiment-v",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = LibrarianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| LibrarianError::UnknownVariant(s.to_string()))
    }
}

fn slab(name: &str, lo: (f64, f64), hi: (f64, f64), bottom: f64, top: f64, placeable: bool) -> Surface {
    Surface {
        name: name.into(),
        footprint: Polygon::from_bounds(Vec2::new(lo.0, lo.1), Vec2::new(hi.0, hi.1)),
        bottom,
        top,
        placeable,
    }
}

fn object(name: &str, class: &str, size: (f64, f64, f64), at: (f64, f64, f64), on: &str) -> ObjectModel {
    ObjectModel {
        name: name.into(),
        class: class.into(),
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

/// Standing book: thin along its local x axis, cover facing +x.
fn book(name: &str, at: (f64, f64), on: &str) -> ObjectModel {
    ObjectModel {
        has_front: true,
        ..object(name, "book", (0.04, 0.16, 0.24), (at.0, at.1, TABLE_TOP), on)
    }
}

pub fn robot() -> AgentModel {
    AgentModel {
        name: ROBOT.into(),
        kind: AgentKind::Robot,
        base: Vec2::new(0.0, 0.0),
        eyes: [
            Vec3::new(0.05, 0.0, 1.30),
            Vec3::new(0.05, 0.0, 1.35),
            Vec3::new(0.10, 0.0, 1.40),
            Vec3::new(0.15, 0.0, 1.45),
        ],
        reach: [0.65, 0.80, 1.00, 1.20],
        reach_band: [[0.40, 1.30], [0.30, 1.40], [0.12, 1.50], [0.05, 1.60]],
        hand: Vec3::new(0.30, 0.0, 1.05),
    }
}

/// Seated member facing the robot. Effort 1 is the resting pose, 2 a head
/// turn, 3 leaning forward, 4 standing up.
pub fn member() -> AgentModel {
    AgentModel {
        name: MEMBER.into(),
        kind: AgentKind::Human,
        base: Vec2::new(1.15, 0.0),
        eyes: [
            Vec3::new(1.20, 0.0, 1.15),
            Vec3::new(1.18, 0.12, 1.17),
            Vec3::new(1.00, 0.10, 1.30),
            Vec3::new(1.10, 0.0, 1.65),
        ],
        reach: [0.70, 0.85, 1.00, 1.30],
        reach_band: [[0.60, 1.30], [0.50, 1.40], [0.40, 1.60], [0.30, 1.90]],
        hand: Vec3::new(1.00, 0.35, 0.85),
    }
}

fn regions(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect()))
        .collect()
}

/// Initial book spots on the side table, behind the screen.
pub const GREY_START: (f64, f64) = (0.15, 0.50);
pub const WHITE_START: (f64, f64) = (0.05, 0.62);

/// Side table with the screen that partly hides it from the member.
fn side_table() -> Vec<Surface> {
    vec![
        slab("table", (-0.15, 0.35), (0.30, 0.80), 0.0, TABLE_TOP, true),
        slab("screen", (0.32, 0.30), (0.34, 0.85), 0.0, 0.92, false),
    ]
}

fn open_scene(grey: (f64, f64), white: (f64, f64), mac: (f64, f64)) -> Scene {
    let mut surfaces = side_table();
    surfaces.push(slab("platform", (0.40, -0.30), (0.65, 0.30), 0.0, TABLE_TOP, true));
    surfaces.push(slab(STAND, (0.10, -0.65), (0.35, -0.40), 0.0, 0.75, true));
    surfaces.push(slab("shelf", (0.18, -0.25), (0.38, 0.25), 0.0, 0.10, true));
    Scene {
        version: 0,
        surfaces,
        objects: vec![
            book(GREY, grey, "table"),
            book(WHITE, white, "table"),
            object(POS, "pos", (0.10, 0.18, 0.06), (mac.0, mac.1, 0.75), STAND),
        ],
        agents: vec![robot(), member()],
        zones: vec![
            Zone {
                name: "show".into(),
                point: Vec3::new(0.45, 0.15, 1.10),
            },
            Zone {
                name: "give".into(),
                point: Vec3::new(0.75, 0.0, 1.05),
            },
        ],
        exchange_point: Some(Vec2::new(0.50, 0.0)),
        regions: regions(&[("makeAcc", &["platform"]), ("putOn", &[STAND]), ("putAway", &["shelf"])]),
    }
}

/// Two books on the side table, the POS machine on its stand.
pub fn reception_open() -> Scene {
    open_scene(GREY_START, WHITE_START, (0.22, -0.52))
}

/// Only the side table and the two books.
pub fn calibration_fig5() -> Scene {
    Scene {
        version: 0,
        surfaces: side_table(),
        objects: vec![book(GREY, GREY_START, "table"), book(WHITE, WHITE_START, "table")],
        agents: vec![robot(), member()],
        zones: vec![],
        exchange_point: None,
        regions: BTreeMap::new(),
    }
}

pub const BOOK_1: &str = "b1";
pub const BOOK_2: &str = "b2";

/// A desk that holds one of two oversized books at a time. The handover
/// point hangs just above the desk, so a book lying there is in the way.
fn cramped(blocked: bool) -> Scene {
    let mut surfaces = vec![
        slab("table", (-0.30, 0.35), (0.30, 1.05), 0.0, TABLE_TOP, true),
        slab("desk", (0.40, -0.20), (0.90, 0.20), 0.0, TABLE_TOP, true),
    ];
    if blocked {
        surfaces.push(slab("lamp", (0.60, -0.05), (0.70, 0.05), 0.78, 0.95, false));
    }
    let big = |name: &str, y: f64| object(name, "book", (0.40, 0.30, 0.05), (0.0, y, TABLE_TOP), "table");
    Scene {
        version: 0,
        surfaces,
        objects: vec![big(BOOK_1, 0.55), big(BOOK_2, 0.88)],
        agents: vec![robot(), member()],
        zones: vec![
            Zone {
                name: "show".into(),
                point: Vec3::new(0.35, 0.0, 1.20),
            },
            Zone {
                name: "give".into(),
                point: Vec3::new(0.65, 0.0, 0.76),
            },
        ],
        exchange_point: Some(Vec2::new(0.65, 0.0)),
        regions: regions(&[("makeAcc", &["desk"])]),
    }
}

pub fn reception_cramped() -> Scene {
    cramped(false)
}

pub fn reception_cramped_blocked() -> Scene {
    cramped(true)
}

/// Largest offset applied to free-object positions in `experiment-v`.
pub const JITTER: f64 = 0.03;

/// The open scene with the books and the POS machine shifted by up to
/// `JITTER` in x and y, drawn from `seed`.
pub fn experiment_v(seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jitter = |p: (f64, f64)| {
        (
            p.0 + rng.gen_range(-JITTER..=JITTER),
            p.1 + rng.gen_range(-JITTER..=JITTER),
        )
    };
    let grey = jitter(GREY_START);
    let white = jitter(WHITE_START);
    let mac = jitter((0.22, -0.52));
    open_scene(grey, white, mac)
}

pub fn build_scene(variant: Variant, seed: u64) -> Scene {
    match variant {
        Variant::ReceptionOpen => reception_open(),
        Variant::ReceptionCramped => reception_cramped(),
        Variant::ReceptionCrampedBlocked => reception_cramped_blocked(),
        Variant::CalibrationFig5 => calibration_fig5(),
        Variant::ExperimentV => experiment_v(seed),
    }
}
