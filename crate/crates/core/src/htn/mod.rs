//! Totally ordered, depth-first HTN refinement with chronological backtracking.

pub mod planner;
pub mod tasks;

pub use planner::{
    BacktrackResult, ChoiceKind, ChoicePoint, Commit, FailureKind, HeadFailure, Hooks, Pending, PlanConfig, PlanStep,
    Planner, Situation, Solution, StepResult, SymbolicHooks, Trace,
};
pub use tasks::TaskList;

use serde::{Deserialize, Serialize};

use crate::symbolic::SymbolicError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStats {
    /// Methods whose precondition was evaluated.
    pub methods_tried: usize,
    /// Choice point re-entries.
    pub backtracks: usize,
    /// Actions appended to a plan prefix, including ones later undone.
    pub actions: usize,
    /// Heads cut off by the depth limit.
    pub depth_cuts: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("no plan: every alternative exhausted after {} backtracks", .0.backtracks)]
    Exhausted(PlanStats),
    #[error("no plan within recursion depth {limit}")]
    DepthLimit { limit: usize, stats: PlanStats },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("hook failure: {0}")]
    Hook(String),
}

impl PlanError {
    pub fn stats(&self) -> Option<&PlanStats> {
        match self {
            PlanError::Exhausted(s) | PlanError::DepthLimit { stats: s, .. } => Some(s),
            _ => None,
        }
    }
}
