//! A 2.5-D world of prism-shaped objects on horizontal surfaces, with agents
//! whose reach and view depend on an effort level.

pub mod facts;
pub mod place;
pub mod scene;
pub mod sense;
pub mod shapes;

pub use facts::{derive_facts, effort_report, effort_rows, EffortRow, Thresholds};
pub use place::{
    collision_free, fits, grid_points, lerp_pose, occlusion_count, path_feasible, path_feasible_steps,
    placement_candidates, prisms_free, yaw, Candidate, Region, DISTANCE_BIN, GRID_STEP, ORIENTATIONS, PATH_STEPS,
};
pub use scene::{
    canonical_grasps, AgentKind, AgentModel, Container, Grasp, ObjectModel, Pose, Scene, Support, Surface, Zone,
    GRIPPER_DEPTH, GRIPPER_HALF_WIDTH,
};
pub use sense::{
    fraction_from, min_reach_effort, reach_feasible, sample_points, sealed, seen_at_all, visibility_at,
    visibility_fraction, DEFAULT_SAMPLES, EFFORTS,
};
pub use shapes::{Polygon, Prism, Vec2, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeoError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown surface or zone `{0}`")]
    UnknownSurface(String),
    #[error("invalid scene: {0}")]
    Invalid(String),
    #[error("scene file: {0}")]
    Json(String),
    #[error("solution targets scene version {found} but the scene is at {current}")]
    VersionConflict { current: u64, found: u64 },
}
