use serde::{Deserialize, Serialize};

use crate::bridge::{interleaved_plan, BridgeConfig, PlanRun, Strategy};
use crate::geo::Scene;
use crate::gtp::GtpStats;
use crate::librarian::{build_scene, Desk, DomainFile, Variant};
use crate::symbolic::HtnProblem;

use super::HarnessError;

/// Scene variants a bench run can use.
pub const BENCH_SCENARIOS: [&str; 2] = ["experiment-v", "reception-open"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub success: bool,
    pub backtracks: usize,
    pub alternatives: usize,
    /// One row per geometric solve, in the order they ran.
    pub tasks: Vec<GtpStats>,
    pub wall: f64,
}

impl TrialRecord {
    pub fn from_run(trial: usize, seed: u64, run: &PlanRun) -> Self {
        TrialRecord {
            trial,
            seed,
            success: run.succeeded(),
            backtracks: run.stats.htn.backtracks,
            alternatives: run.stats.geo_alternatives,
            tasks: run.stats.gtp.clone(),
            wall: run.stats.wall,
        }
    }

    /// The record with every wall-clock field zeroed.
    pub fn without_times(&self) -> Self {
        TrialRecord {
            wall: 0.0,
            tasks: self.tasks.iter().map(|t| GtpStats { time: 0.0, ..t.clone() }).collect(),
            ..self.clone()
        }
    }
}

/// Problem and scene of one trial: the order-managing task on the
/// experiment domain, with the member paying by card.
pub fn trial_setup(scenario: &str, seed: u64) -> Result<(HtnProblem, Scene), HarnessError> {
    let variant = match scenario {
        "experiment-v" => Variant::ExperimentV,
        "reception-open" => Variant::ReceptionOpen,
        _ => return Err(HarnessError::UnknownScenario(scenario.to_string())),
    };
    let domain = DomainFile::Experiment.load()?;
    let problem = Desk::two_books().problem(&domain)?;
    Ok((problem, build_scene(variant, seed)))
}

pub fn trial_config(strategy: Strategy) -> BridgeConfig {
    BridgeConfig {
        strategy,
        ..Default::default()
    }
}

/// Runs `n` trials with seeds `seed0..seed0 + n`.
pub fn run_trials(n: usize, scenario: &str, strategy: Strategy, seed0: u64) -> Result<Vec<TrialRecord>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::NoTrials);
    }
    let cfg = trial_config(strategy);
    let mut out = Vec::with_capacity(n);
    for trial in 0..n {
        let seed = seed0 + trial as u64;
        let (problem, scene) = trial_setup(scenario, seed)?;
        let run = interleaved_plan(&problem, &scene, &cfg)?;
        out.push(TrialRecord::from_run(trial, seed, &run));
    }
    Ok(out)
}
