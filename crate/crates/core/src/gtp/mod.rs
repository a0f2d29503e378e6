//! Geometric task planner: turns a symbolic action into a concrete placement,
//! grasp and effort level for a given scene.

mod apply;
mod log;
mod solve;
mod task;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::geo::{GeoError, Pose, Support, Vec2, DEFAULT_SAMPLES};

pub use apply::{apply_solution, apply_step, apply_steps, check_solution, effects, Effects};
pub use log::{LogEntry, TaskSequenceLog};
pub use solve::{resume, solve};
pub use task::{EffortOf, Goal, GtpTask, Profile, TaskKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GtpError {
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error("task contract: {0}")]
    Contract(String),
    #[error("no log entry {0}")]
    NoEntry(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GtpConfig {
    pub timeout: Duration,
    pub samples: usize,
    /// Re-evaluate memoized failures instead of skipping them, recording
    /// whether each still fails.
    pub retest_memo: bool,
    /// Keep an event trace of candidate tests.
    pub instrument: bool,
    /// Per object, a point whose nearest placement candidate is tried before
    /// the ranked order. Used to set up a given first placement.
    pub first_try: BTreeMap<String, Vec2>,
}

impl Default for GtpConfig {
    fn default() -> Self {
        GtpConfig {
            timeout: Duration::from_secs(60),
            samples: DEFAULT_SAMPLES,
            retest_memo: false,
            instrument: false,
            first_try: BTreeMap::new(),
        }
    }
}

/// Counters for one solve call.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GtpStats {
    pub kind: Option<TaskKind>,
    pub time: f64,
    pub success: bool,
    pub timed_out: bool,
    pub pts: u64,
    pub grasps: u64,
    pub orts: u64,
    pub calls: u64,
}

impl GtpStats {
    pub fn absorb(&mut self, o: &GtpStats) {
        self.pts += o.pts;
        self.grasps += o.grasps;
        self.orts += o.orts;
        self.calls += o.calls;
    }
}

/// Next tuple to examine: effort, candidate point, grasp, orientation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cursor {
    pub effort: u8,
    pub point: usize,
    pub grasp: usize,
    pub orient: usize,
}

/// What a memoized failure is keyed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MemoKey {
    Point(usize),
    Grasp(usize),
    Orient(usize, usize, usize),
}

/// Failures that do not depend on effort, with the effort they were found at.
/// Valid for one scene version only.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FailureMemo {
    pub scene_version: u64,
    pub entries: BTreeMap<MemoKey, u8>,
}

impl FailureMemo {
    pub fn for_version(v: u64) -> Self {
        FailureMemo {
            scene_version: v,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, k: MemoKey) -> Option<u8> {
        self.entries.get(&k).copied()
    }

    pub fn insert(&mut self, k: MemoKey, effort: u8) {
        self.entries.entry(k).or_insert(effort);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Event {
    /// Key recorded as a failure at this effort.
    Memoized { key: MemoKey, effort: u8 },
    /// Key evaluated at this effort.
    Tested { key: MemoKey, effort: u8 },
    /// Memoized key skipped.
    Skipped { key: MemoKey, effort: u8 },
    /// Memoized key re-evaluated in retest mode.
    Retested {
        key: MemoKey,
        effort: u8,
        still_fails: bool,
    },
    /// Visibility sampled; `cheap_passed` records the cheap checks' verdict.
    Visibility { key: MemoKey, cheap_passed: bool },
}

/// Visit of one atomic task inside a solve.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AtomicState {
    pub cursor: Cursor,
    pub memo: FailureMemo,
    /// Tuples already handed out, so higher efforts do not repeat them.
    pub returned: BTreeSet<(usize, usize, usize)>,
    /// Per-grasp outcome of approach and lift, once known.
    pub pick: BTreeMap<usize, bool>,
}

/// One placement, pick or handover inside a solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub kind: TaskKind,
    pub object: String,
    pub effort: u8,
    pub grasp: usize,
    pub grasp_id: String,
    /// Candidate index in ranked order.
    pub candidate: usize,
    pub orientation: usize,
    /// Object pose where the motion ends.
    pub target: Pose,
    /// Resting pose after the step (differs from `target` on handovers).
    pub pose: Pose,
    pub support: Support,
    /// Straight-line carry checked for this step.
    pub path: (Pose, Pose),
    pub held_grasp: Option<usize>,
}

impl Step {
    pub fn tuple(&self) -> (u8, usize, usize, usize) {
        (self.effort, self.candidate, self.grasp, self.orientation)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GtpSolution {
    pub task: String,
    pub steps: Vec<Step>,
    pub base_version: u64,
    pub base_fingerprint: u64,
    /// Version of the scene after applying the solution.
    pub scene_version: u64,
}

impl GtpSolution {
    /// Effort of the last step, which the symbolic effect reports.
    pub fn effort(&self) -> u8 {
        self.steps.last().map_or(1, |s| s.effort)
    }
}

/// Resumable state of a solve: one atomic state per component, plus the
/// partial solution reached so far.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Checkpoint {
    pub levels: Vec<AtomicState>,
    pub steps: Vec<Step>,
    pub exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solution: Option<GtpSolution>,
    pub checkpoint: Checkpoint,
    pub stats: GtpStats,
    pub events: Vec<Event>,
}
