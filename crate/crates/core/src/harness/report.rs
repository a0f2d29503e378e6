use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::gtp::TaskKind;

use super::{HarnessError, TrialRecord};

pub const SUMMARY_HEADER: [&str; 7] = ["task", "time", "succ_pct", "pts", "grasps", "orts", "calls"];
pub const TOTALS_HEADER: [&str; 5] = [
    "runs",
    "mean_backtracks",
    "frac_runs_over_3_backtracks",
    "mean_geo_alternatives",
    "failed_runs",
];

/// Row order of the summary: the four published tasks first.
const KIND_ORDER: [TaskKind; 7] = [
    TaskKind::MakeAcc,
    TaskKind::Show,
    TaskKind::Give,
    TaskKind::PutAway,
    TaskKind::Pick,
    TaskKind::PutOn,
    TaskKind::Compound,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub task: String,
    /// Mean seconds per solve.
    pub time: f64,
    pub succ_pct: f64,
    pub pts: f64,
    pub grasps: f64,
    pub orts: f64,
    pub calls: f64,
    /// Solves the row averages over.
    pub solves: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    /// Only kinds some trial exercised.
    pub rows: Vec<SummaryRow>,
    pub runs: usize,
    pub mean_backtracks: f64,
    pub frac_runs_over_3_backtracks: f64,
    pub mean_geo_alternatives: f64,
    pub failed_runs: usize,
}

impl SummaryTable {
    pub fn row(&self, task: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.task == task)
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

/// Per-kind means over every solve of every trial, plus run-level
/// backtrack figures. Records are taken in trial order.
pub fn summarize(records: &[TrialRecord]) -> Result<SummaryTable, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyRecords);
    }
    let mut recs: Vec<&TrialRecord> = records.iter().collect();
    recs.sort_by_key(|r| r.trial);
    let mut rows = Vec::new();
    for kind in KIND_ORDER {
        let solves: Vec<_> = recs
            .iter()
            .flat_map(|r| r.tasks.iter())
            .filter(|t| t.kind == Some(kind))
            .collect();
        if solves.is_empty() {
            continue;
        }
        rows.push(SummaryRow {
            task: kind.label().to_string(),
            time: mean(solves.iter().map(|t| t.time)),
            succ_pct: 100.0 * mean(solves.iter().map(|t| if t.success { 1.0 } else { 0.0 })),
            pts: mean(solves.iter().map(|t| t.pts as f64)),
            grasps: mean(solves.iter().map(|t| t.grasps as f64)),
            orts: mean(solves.iter().map(|t| t.orts as f64)),
            calls: mean(solves.iter().map(|t| t.calls as f64)),
            solves: solves.len(),
        });
    }
    Ok(SummaryTable {
        rows,
        runs: recs.len(),
        mean_backtracks: mean(recs.iter().map(|r| r.backtracks as f64)),
        frac_runs_over_3_backtracks: mean(recs.iter().map(|r| if r.backtracks > 3 { 1.0 } else { 0.0 })),
        mean_geo_alternatives: mean(recs.iter().map(|r| r.alternatives as f64)),
        failed_runs: recs.iter().filter(|r| !r.success).count(),
    })
}

fn num(x: f64) -> String {
    format!("{x:.6}")
}

/// Two CSV blocks separated by a blank line: the per-task table, then the
/// run totals.
pub fn emit_summary_csv(table: &SummaryTable) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(SUMMARY_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.task.clone(),
            num(r.time),
            num(r.succ_pct),
            num(r.pts),
            num(r.grasps),
            num(r.orts),
            num(r.calls),
        ])?;
    }
    let mut out = into_string(w)?;
    out.push('\n');
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(TOTALS_HEADER)?;
    w.write_record([
        table.runs.to_string(),
        num(table.mean_backtracks),
        num(table.frac_runs_over_3_backtracks),
        num(table.mean_geo_alternatives),
        table.failed_runs.to_string(),
    ])?;
    out.push_str(&into_string(w)?);
    Ok(out)
}

/// One line per trial.
pub fn emit_records_csv(records: &[TrialRecord]) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record([
        "trial",
        "seed",
        "success",
        "backtracks",
        "alternatives",
        "solves",
        "wall",
    ])?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.success.to_string(),
            r.backtracks.to_string(),
            r.alternatives.to_string(),
            r.tasks.len().to_string(),
            num(r.wall),
        ])?;
    }
    into_string(w)
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String, HarnessError> {
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Plain-text table with the published column layout.
pub fn emit_text(table: &SummaryTable) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<9} {:>8} {:>7} {:>7} {:>7} {:>8} {:>7}",
        "ACTION", "TIME", "SUCC %", "PTS", "GRASPS", "ORTS", "CALLS"
    );
    for r in &table.rows {
        let _ = writeln!(
            s,
            "{:<9} {:>8.3} {:>7.1} {:>7.1} {:>7.1} {:>8.1} {:>7.1}",
            r.task, r.time, r.succ_pct, r.pts, r.grasps, r.orts, r.calls
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "runs {}, failed {}", table.runs, table.failed_runs);
    let _ = writeln!(
        s,
        "HTN backtracks per run {:.2}, runs over 3 backtracks {:.1}%",
        table.mean_backtracks,
        100.0 * table.frac_runs_over_3_backtracks
    );
    let _ = writeln!(s, "geometric alternatives per run {:.2}", table.mean_geo_alternatives);
    s
}
