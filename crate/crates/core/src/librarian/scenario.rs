use std::fmt::Write as _;

use crate::bridge::{interleaved_plan, replay_plan, BridgeConfig, PlanRun, Strategy};
use crate::geo::{derive_facts, effort_report, Vec2};
use crate::symbolic::{Fact, HtnDomain};

use super::domain::{build_domain, build_experiment_domain, Desk};
use super::scenes::{build_scene, Variant, GREY, MEMBER, WHITE};
use super::LibrarianError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainFile {
    TableI,
    Experiment,
}

impl DomainFile {
    pub fn load(self) -> Result<HtnDomain, LibrarianError> {
        match self {
            DomainFile::TableI => build_domain(),
            DomainFile::Experiment => build_experiment_domain(),
        }
    }
}

/// What a scenario run must show.
#[derive(Clone, Debug, Default)]
pub struct Expect {
    pub solvable: bool,
    pub min_backtracks: Option<usize>,
    pub max_backtracks: Option<usize>,
    pub min_alternatives: Option<usize>,
    pub max_alternatives: Option<usize>,
    /// Operator name and exact number of occurrences in the plan.
    pub counts: Vec<(String, usize)>,
    /// Operators that must not appear.
    pub absent: Vec<String>,
    /// Shared literals required in the final scene.
    pub final_facts: Vec<Fact>,
    pub plan_len: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ScenarioSpec {
    pub name: String,
    pub domain: DomainFile,
    pub variant: Variant,
    pub seed: u64,
    pub desk: Desk,
    pub strategy: Strategy,
    /// Placement points tried first, per object.
    pub first_try: Vec<(String, Vec2)>,
    pub expect: Expect,
}

impl ScenarioSpec {
    pub fn config(&self) -> BridgeConfig {
        let mut cfg = BridgeConfig {
            strategy: self.strategy,
            ..Default::default()
        };
        for (o, p) in &self.first_try {
            cfg.gtp.first_try.insert(o.clone(), *p);
        }
        cfg
    }
}

pub struct ScenarioReport {
    pub name: String,
    pub pass: bool,
    /// One line per failed expectation, followed by the trace.
    pub diagnostics: Vec<String>,
    pub run: PlanRun,
    /// Replay of the plan from the initial state and scene succeeded.
    pub replayed: bool,
}

pub const SCENARIOS: [&str; 6] = [
    "fig3-mixed-strategy",
    "fig3-blocked",
    "fig4-occlusion",
    "fig4-occlusion-htn-only",
    "m2-trivial",
    "method-preference",
];

fn visible(o: &str, a: &str, e: u8) -> Fact {
    Fact::new("visible", &[o, a, &e.to_string()])
}

/// White's first placement lands right in front of the grey book.
pub const OCCLUDING_SPOT: (f64, f64) = (0.55, 0.0);

pub fn scenario(name: &str) -> Result<ScenarioSpec, LibrarianError> {
    let base = |variant, domain, desk, expect| ScenarioSpec {
        name: name.to_string(),
        domain,
        variant,
        seed: 0,
        desk,
        strategy: Strategy::default(),
        first_try: vec![],
        expect,
    };
    let forced = vec![(WHITE.to_string(), Vec2::new(OCCLUDING_SPOT.0, OCCLUDING_SPOT.1))];
    let spec = match name {
        "fig3-mixed-strategy" => base(
            Variant::ReceptionCramped,
            DomainFile::TableI,
            Desk::oversized(),
            Expect {
                solvable: true,
                min_backtracks: Some(1),
                counts: vec![("GIVEBK".into(), 1), ("MAKEBKACC".into(), 1)],
                ..Default::default()
            },
        ),
        "fig3-blocked" => base(
            Variant::ReceptionCrampedBlocked,
            DomainFile::TableI,
            Desk::oversized(),
            Expect {
                solvable: false,
                ..Default::default()
            },
        ),
        "fig4-occlusion" => ScenarioSpec {
            first_try: forced,
            ..base(
                Variant::ReceptionOpen,
                DomainFile::Experiment,
                Desk::two_books_then_pos(),
                Expect {
                    solvable: true,
                    max_backtracks: Some(0),
                    min_alternatives: Some(1),
                    max_alternatives: Some(1),
                    counts: vec![("PICKMAKEBKACC".into(), 2)],
                    final_facts: vec![visible(GREY, MEMBER, 1), visible(WHITE, MEMBER, 1)],
                    ..Default::default()
                },
            )
        },
        "fig4-occlusion-htn-only" => ScenarioSpec {
            first_try: forced,
            strategy: Strategy::htn_only(),
            ..base(
                Variant::ReceptionOpen,
                DomainFile::Experiment,
                Desk::two_books_then_pos(),
                Expect {
                    solvable: true,
                    min_backtracks: Some(1),
                    max_alternatives: Some(0),
                    counts: vec![("PICKMAKEBKACC".into(), 1), ("GIVEBK".into(), 1)],
                    ..Default::default()
                },
            )
        },
        "m2-trivial" => base(
            Variant::ReceptionOpen,
            DomainFile::TableI,
            Desk::nothing(),
            Expect {
                solvable: true,
                max_backtracks: Some(0),
                plan_len: Some(0),
                ..Default::default()
            },
        ),
        "method-preference" => base(
            Variant::ReceptionOpen,
            DomainFile::TableI,
            Desk::one_book(),
            Expect {
                solvable: true,
                counts: vec![("MAKEBKACC".into(), 1)],
                absent: vec!["GIVEBK".into()],
                ..Default::default()
            },
        ),
        _ => return Err(LibrarianError::UnknownScenario(name.to_string())),
    };
    Ok(spec)
}

fn check(spec: &ScenarioSpec, run: &PlanRun, out: &mut Vec<String>) {
    let e = &spec.expect;
    let bt = run.stats.htn.backtracks;
    let alt = run.stats.geo_alternatives;
    if run.succeeded() != e.solvable {
        out.push(format!("solvable: expected {}, got {}", e.solvable, run.succeeded()));
    }
    if e.min_backtracks.is_some_and(|m| bt < m) || e.max_backtracks.is_some_and(|m| bt > m) {
        out.push(format!(
            "HTN backtracks {bt} outside [{:?}, {:?}]",
            e.min_backtracks, e.max_backtracks
        ));
    }
    if e.min_alternatives.is_some_and(|m| alt < m) || e.max_alternatives.is_some_and(|m| alt > m) {
        out.push(format!(
            "geometric alternatives {alt} outside [{:?}, {:?}]",
            e.min_alternatives, e.max_alternatives
        ));
    }
    let names = run.action_names();
    for (op, n) in &e.counts {
        let got = names.iter().filter(|a| *a == op).count();
        if got != *n {
            out.push(format!("{op} appears {got} times, expected {n}"));
        }
    }
    for op in &e.absent {
        if names.contains(op) {
            out.push(format!("{op} must not appear"));
        }
    }
    if let Some(n) = e.plan_len {
        if names.len() != n || !run.succeeded() {
            out.push(format!("plan length {}, expected {n}", names.len()));
        }
    }
    if let Ok(sol) = &run.result {
        let facts = derive_facts(&sol.world.scene, &spec.config().thresholds);
        for f in &e.final_facts {
            if !facts.contains(f) {
                out.push(format!("final scene lacks {f}"));
            }
        }
    }
}

fn trace(run: &PlanRun) -> String {
    let mut s = String::new();
    match &run.result {
        Ok(sol) => {
            for (i, p) in sol.plan.iter().enumerate() {
                let _ = writeln!(s, "  {i:>2} {}", p.action);
            }
            for (m, t) in &sol.chosen {
                let _ = writeln!(s, "  method {m} for {t}");
            }
            s.push_str(&effort_report(&sol.world.scene, &Default::default()));
        }
        Err(e) => {
            let _ = writeln!(s, "  planner: {e}");
        }
    }
    let _ = writeln!(
        s,
        "  {}\n  {}",
        crate::bridge::CombinedStats::CSV_HEADER,
        run.stats.csv_row()
    );
    s
}

/// Runs a scenario and checks its expectations, the replay of any plan
/// found included.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioReport, LibrarianError> {
    let domain = spec.domain.load()?;
    let problem = spec.desk.problem(&domain)?;
    let scene = build_scene(spec.variant, spec.seed);
    let cfg = spec.config();
    let run = interleaved_plan(&problem, &scene, &cfg)?;
    let mut diagnostics = Vec::new();
    check(spec, &run, &mut diagnostics);
    let mut replayed = false;
    if let Ok(sol) = &run.result {
        match replay_plan(&problem, &scene, &sol.plan, &cfg) {
            Ok(end) if end == sol.world.scene => replayed = true,
            Ok(_) => diagnostics.push("replay ends in a different scene".into()),
            Err(e) => diagnostics.push(format!("replay: {e}")),
        }
    }
    let pass = diagnostics.is_empty();
    if !pass {
        diagnostics.push(trace(&run));
    }
    Ok(ScenarioReport {
        name: spec.name.clone(),
        pass,
        diagnostics,
        run,
        replayed,
    })
}
