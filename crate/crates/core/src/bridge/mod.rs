//! Evaluable predicates, GS action effects and the interleaving of HTN and
//! geometric backtracking.

mod binding;
mod hooks;
mod plan;

use serde::{Deserialize, Serialize};

use crate::geo::GeoError;
use crate::gtp::GtpStats;
use crate::htn::PlanStats;

pub use binding::{Binding, Template};
pub use hooks::{BridgeHooks, GeoNote, GeoWorld, Pin};
pub use plan::{grounded_problem, interleaved_plan, reconcile, replay_plan, BridgeConfig, PlanRun, Reconciled};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Failures go straight to HTN backtracking.
    HtnOnly,
    /// Earlier geometric solutions are revised first.
    GeometricFirst,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "htn-only" => Some(Mode::HtnOnly),
            "geometric-first" => Some(Mode::GeometricFirst),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::HtnOnly => "htn-only",
            Mode::GeometricFirst => "geometric-first",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub mode: Mode,
    /// Alternatives requested per failing action.
    pub budget: usize,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            mode: Mode::GeometricFirst,
            budget: 8,
        }
    }
}

impl Strategy {
    pub fn htn_only() -> Self {
        Strategy {
            mode: Mode::HtnOnly,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CombinedStats {
    pub htn: PlanStats,
    /// `alternative()` calls made.
    pub geo_alternatives: usize,
    /// Repairs that produced a situation to continue from.
    pub geo_repairs: usize,
    /// Largest number of alternatives spent on one failing action.
    pub max_attempts_per_failure: usize,
    pub cache_hits: usize,
    /// One row per actual geometric solve, alternatives included.
    pub gtp: Vec<GtpStats>,
    pub wall: f64,
}

impl CombinedStats {
    pub const CSV_HEADER: &'static str = "htn_backtracks,geo_alternatives,gtp_solves,cache_hits,wall";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6}",
            self.htn.backtracks,
            self.geo_alternatives,
            self.gtp.len(),
            self.cache_hits,
            self.wall
        )
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BridgeError {
    #[error("evaluable predicates without a geometric task: {0}")]
    Unbound(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
}
