//! Batch trials over the receptionist desk, Table II style summaries and
//! top-down scene snapshots.

mod report;
mod svg;
mod trials;

pub use report::{
    emit_records_csv, emit_summary_csv, emit_text, summarize, SummaryRow, SummaryTable, SUMMARY_HEADER, TOTALS_HEADER,
};
pub use svg::{snapshot, svg_string};
pub use trials::{run_trials, trial_config, trial_setup, TrialRecord, BENCH_SCENARIOS};

use crate::bridge::BridgeError;
use crate::librarian::LibrarianError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("unknown bench scenario {0:?}")]
    UnknownScenario(String),
    #[error("nothing to summarize")]
    EmptyRecords,
    #[error(transparent)]
    Librarian(#[from] LibrarianError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
