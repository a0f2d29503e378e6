//! The library receptionist: domain files, reception scenes and named
//! scenario checks.

mod domain;
mod scenario;
mod scenes;

pub use domain::{build_domain, build_experiment_domain, Desk, COST, DOMAIN_TEXT, EXPERIMENT_TEXT};
pub use scenario::{
    run_scenario, scenario, DomainFile, Expect, ScenarioReport, ScenarioSpec, OCCLUDING_SPOT, SCENARIOS,
};
pub use scenes::*;

use crate::bridge::BridgeError;
use crate::geo::GeoError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LibrarianError {
    #[error("unknown scene variant `{0}`")]
    UnknownVariant(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}
