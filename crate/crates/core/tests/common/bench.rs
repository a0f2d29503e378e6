//! The `bench` command end to end: output shape, statistics recomputed from
//! the per-trial records, determinism, and replay of every trial's plan.

use std::path::Path;
use std::process::Command;

use htngtp::bridge::{interleaved_plan, Strategy};
use htngtp::harness::{trial_config, trial_setup};

use super::sound::assert_sound;

pub const TABLE_II: [&str; 7] = ["task", "time", "succ_pct", "pts", "grasps", "orts", "calls"];
pub const TOTALS: [&str; 5] = [
    "runs",
    "mean_backtracks",
    "frac_runs_over_3_backtracks",
    "mean_geo_alternatives",
    "failed_runs",
];
pub const RECORDS: [&str; 7] = [
    "trial",
    "seed",
    "success",
    "backtracks",
    "alternatives",
    "solves",
    "wall",
];

pub struct BenchOutput {
    pub table: Vec<Vec<String>>,
    pub totals: Vec<String>,
    pub records: Vec<Vec<String>>,
}

fn rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

/// Runs the binary and checks the headers of both files.
pub fn run_bench(dir: &Path, tag: &str, trials: usize, seed0: u64) -> BenchOutput {
    let out = dir.join(format!("{tag}-summary.csv"));
    let rec = dir.join(format!("{tag}-records.csv"));
    let status = Command::new(env!("CARGO_BIN_EXE_htngtp"))
        .args(["bench", "--trials", &trials.to_string(), "--scenario", "experiment-v"])
        .args(["--seed0", &seed0.to_string()])
        .arg("--out")
        .arg(&out)
        .arg("--records")
        .arg(&rec)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let (table, totals) = text.split_once("\n\n").expect("two blocks split by a blank line");
    let mut table = rows(table);
    let mut totals = rows(totals);
    assert_eq!(table.remove(0), TABLE_II);
    assert_eq!(totals.remove(0), TOTALS);
    assert_eq!(totals.len(), 1);
    let mut records = rows(&std::fs::read_to_string(&rec).unwrap());
    assert_eq!(records.remove(0), RECORDS);
    assert_eq!(records.len(), trials);
    BenchOutput {
        table,
        totals: totals.remove(0),
        records,
    }
}

fn f(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

/// Everything but wall-clock columns.
fn timeless(rows: &[Vec<String>], time_col: usize) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(i, _)| *i != time_col)
                .map(|(_, c)| c.clone())
                .collect()
        })
        .collect()
}

pub fn bench_shape_and_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let n = 10;
    let a = run_bench(dir.path(), "a", n, 0);

    let backtracks: Vec<f64> = a.records.iter().map(|r| f(&r[3])).collect();
    let mean = backtracks.iter().sum::<f64>() / n as f64;
    let over = backtracks.iter().filter(|&&b| b > 3.0).count() as f64 / n as f64;
    let alternatives = a.records.iter().map(|r| f(&r[4])).sum::<f64>() / n as f64;
    let failed = a.records.iter().filter(|r| r[2] != "true").count();
    assert_eq!(a.totals[0], n.to_string());
    assert!(
        (f(&a.totals[1]) - mean).abs() < 1e-6,
        "mean backtracks {} vs {mean}",
        a.totals[1]
    );
    assert!(
        (f(&a.totals[2]) - over).abs() < 1e-6,
        "over-3 fraction {} vs {over}",
        a.totals[2]
    );
    assert!((f(&a.totals[3]) - alternatives).abs() < 1e-6);
    assert_eq!(a.totals[4], failed.to_string());
    for (i, r) in a.records.iter().enumerate() {
        assert_eq!(r[0], i.to_string());
        assert_eq!(r[1], i.to_string());
    }
    // Paying with no credit always goes through the second payment method.
    assert!(backtracks.iter().all(|&b| b >= 1.0));
    // Table rows cover every geometric solve of every trial.
    let solves: f64 = a.records.iter().map(|r| f(&r[5])).sum();
    assert!(solves > 0.0);
    for row in &a.table {
        let pct = f(&row[2]);
        assert!((0.0..=100.0).contains(&pct), "{row:?}");
    }

    let b = run_bench(dir.path(), "b", n, 0);
    assert_eq!(
        timeless(&a.records, 6),
        timeless(&b.records, 6),
        "records differ between identical runs"
    );
    assert_eq!(timeless(&a.table, 1), timeless(&b.table, 1));
    assert_eq!(a.totals, b.totals);

    let cfg = trial_config(Strategy::htn_only());
    for (i, r) in a.records.iter().enumerate() {
        let (problem, scene) = trial_setup("experiment-v", i as u64).unwrap();
        let run = interleaved_plan(&problem, &scene, &cfg).unwrap();
        assert_eq!(run.stats.htn.backtracks.to_string(), r[3]);
        if run.succeeded() {
            assert!(assert_sound(&run, &cfg) > 0);
        }
    }
}
