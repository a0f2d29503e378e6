use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use htngtp::bridge::{interleaved_plan, BridgeConfig, BridgeError, Mode, Strategy};
use htngtp::geo::Scene;
use htngtp::harness::{
    emit_records_csv, emit_summary_csv, emit_text, run_trials, snapshot, summarize, HarnessError, TrialRecord,
};
use htngtp::librarian::{build_scene, run_scenario, scenario, LibrarianError, Variant, SCENARIOS};
use htngtp::symbolic::{parse_domain, parse_problem};

const EXIT_PLANNER: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "htngtp", version, about = "HTN planning with a geometric task planner")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    HtnOnly,
    GeometricFirst,
}

impl StrategyArg {
    fn mode(self) -> Mode {
        match self {
            StrategyArg::HtnOnly => Mode::HtnOnly,
            StrategyArg::GeometricFirst => Mode::GeometricFirst,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Plan one problem over one scene.
    Plan {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        /// Scene as JSON.
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "geometric-first")]
        strategy: StrategyArg,
        /// Per-solve limit of the geometric planner, in seconds.
        #[arg(long, default_value_t = 60.0)]
        gtp_timeout: f64,
        /// Geometric alternatives per failing action.
        #[arg(long, default_value_t = 8)]
        geo_budget: usize,
        /// Recorded with the statistics; planning itself is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
        #[arg(long)]
        emit_stats: Option<PathBuf>,
        /// Directory for `initial.svg` and, on success, `final.svg`.
        #[arg(long)]
        emit_svg: Option<PathBuf>,
    },
    /// Batch trials with a statistics table.
    Bench {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "experiment-v")]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed0: u64,
        #[arg(long, value_enum, default_value = "htn-only")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 8)]
        geo_budget: usize,
        /// Summary CSV; the table is printed to stdout either way.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial CSV.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Write a built-in scene as JSON.
    Scene {
        #[arg(long)]
        variant: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a named scenario check.
    Scenario {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl Fail {
    fn usage(m: impl ToString) -> Self {
        Fail(EXIT_USAGE, m.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail(EXIT_PLANNER, format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn plan(
    domain: &Path,
    problem: &Path,
    scene: &Path,
    strategy: StrategyArg,
    gtp_timeout: f64,
    geo_budget: usize,
    seed: u64,
    emit_plan: Option<&Path>,
    emit_stats: Option<&Path>,
    emit_svg: Option<&Path>,
) -> Result<(), Fail> {
    if !(gtp_timeout > 0.0 && gtp_timeout.is_finite()) {
        return Err(Fail::usage("--gtp-timeout must be positive"));
    }
    let domain = parse_domain(&read(domain)?).map_err(|e| Fail::usage(format!("domain: {e}")))?;
    let problem = parse_problem(&read(problem)?, Arc::new(domain)).map_err(|e| Fail::usage(format!("problem: {e}")))?;
    let scene = Scene::from_json(&read(scene)?).map_err(|e| Fail::usage(format!("scene: {e}")))?;
    let mut cfg = BridgeConfig {
        strategy: Strategy {
            mode: strategy.mode(),
            budget: geo_budget,
        },
        ..Default::default()
    };
    cfg.gtp.timeout = Duration::from_secs_f64(gtp_timeout);
    let run = interleaved_plan(&problem, &scene, &cfg).map_err(|e| match e {
        BridgeError::Unbound(_) | BridgeError::Geo(_) => Fail::usage(e),
    })?;
    if let Some(dir) = emit_svg {
        std::fs::create_dir_all(dir).map_err(|e| Fail(EXIT_PLANNER, format!("{}: {e}", dir.display())))?;
        let svg = |s: &Scene, name: &str| snapshot(s, &dir.join(name)).map_err(|e| Fail(EXIT_PLANNER, e.to_string()));
        svg(&scene, "initial.svg")?;
        if let Ok(sol) = &run.result {
            svg(&sol.world.scene, "final.svg")?;
        }
    }
    if let Some(path) = emit_stats {
        let rec = TrialRecord::from_run(0, seed, &run);
        let table = summarize(&[rec]).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?;
        write(
            path,
            &emit_summary_csv(&table).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?,
        )?;
    }
    match &run.result {
        Ok(sol) => {
            let text: String = sol.plan.iter().map(|s| format!("{}\n", s.action)).collect();
            print!("{text}");
            if let Some(path) = emit_plan {
                write(path, &text)?;
            }
            eprintln!("{}\n{}", htngtp::bridge::CombinedStats::CSV_HEADER, run.stats.csv_row());
            Ok(())
        }
        Err(e) => Err(Fail(EXIT_PLANNER, format!("planning failed: {e}"))),
    }
}

fn bench(
    trials: usize,
    name: &str,
    seed0: u64,
    strategy: StrategyArg,
    geo_budget: usize,
    out: Option<&Path>,
    records: Option<&Path>,
) -> Result<(), Fail> {
    let strategy = Strategy {
        mode: strategy.mode(),
        budget: geo_budget,
    };
    let recs = run_trials(trials, name, strategy, seed0).map_err(|e| match e {
        HarnessError::NoTrials | HarnessError::UnknownScenario(_) => Fail::usage(e),
        e => Fail(EXIT_PLANNER, e.to_string()),
    })?;
    let table = summarize(&recs).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?;
    print!("{}", emit_text(&table));
    if let Some(path) = out {
        write(
            path,
            &emit_summary_csv(&table).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?,
        )?;
    }
    if let Some(path) = records {
        write(
            path,
            &emit_records_csv(&recs).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?,
        )?;
    }
    Ok(())
}

fn export_scene(variant: &str, seed: u64, out: &Path, svg: Option<&Path>) -> Result<(), Fail> {
    let v: Variant = variant.parse().map_err(Fail::usage)?;
    let scene = build_scene(v, seed);
    write(out, &scene.to_json())?;
    if let Some(path) = svg {
        snapshot(&scene, path).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?;
    }
    Ok(())
}

fn run_named(name: &str) -> Result<(), Fail> {
    let spec = scenario(name).map_err(|e| match e {
        LibrarianError::UnknownScenario(_) => Fail::usage(format!("{e}; known: {}", SCENARIOS.join(", "))),
        e => Fail(EXIT_PLANNER, e.to_string()),
    })?;
    let report = run_scenario(&spec).map_err(|e| Fail(EXIT_PLANNER, e.to_string()))?;
    let s = &report.run.stats;
    println!(
        "{}: {} (backtracks {}, alternatives {}, replayed {})",
        report.name,
        if report.pass { "pass" } else { "FAIL" },
        s.htn.backtracks,
        s.geo_alternatives,
        report.replayed
    );
    for a in report.run.action_names() {
        println!("  {a}");
    }
    if report.pass {
        Ok(())
    } else {
        Err(Fail(EXIT_PLANNER, report.diagnostics.join("\n")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Plan {
            domain,
            problem,
            scene,
            strategy,
            gtp_timeout,
            geo_budget,
            seed,
            emit_plan,
            emit_stats,
            emit_svg,
        } => plan(
            domain,
            problem,
            scene,
            *strategy,
            *gtp_timeout,
            *geo_budget,
            *seed,
            emit_plan.as_deref(),
            emit_stats.as_deref(),
            emit_svg.as_deref(),
        ),
        Cmd::Bench {
            trials,
            scenario,
            seed0,
            strategy,
            geo_budget,
            out,
            records,
        } => bench(
            *trials,
            scenario,
            *seed0,
            *strategy,
            *geo_budget,
            out.as_deref(),
            records.as_deref(),
        ),
        Cmd::Scene {
            variant,
            seed,
            out,
            svg,
        } => export_scene(variant, *seed, out, svg.as_deref()),
        Cmd::Scenario { list: true, .. } => {
            for s in SCENARIOS {
                println!("{s}");
            }
            Ok(())
        }
        Cmd::Scenario { name, .. } => run_named(name.as_deref().unwrap_or_default()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
