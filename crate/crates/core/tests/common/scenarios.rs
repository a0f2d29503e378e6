//! The librarian scenes: method preference, the cramped reception with and
//! without a way to hand books over, and the occluding first placement.

use std::collections::BTreeSet;

use htngtp::bridge::{interleaved_plan, PlanRun};
use htngtp::geo::derive_facts;
use htngtp::htn::PlanError;
use htngtp::librarian::{
    build_domain, build_scene, calibration_fig5, run_scenario, scenario, GREY, MEMBER, ROBOT, WHITE,
};
use htngtp::symbolic::{Fact, HtnDomain};

use super::sound::assert_sound;

fn count(run: &PlanRun, op: &str) -> usize {
    run.action_names().iter().filter(|a| *a == op).count()
}

fn fact(p: &str, o: &str, a: &str, e: u8) -> Fact {
    Fact::new(p, &[o, a, &e.to_string()])
}

/// Visibility and reachability literals of both books, as (book, agent,
/// visible effort, reachable effort).
fn book_pattern(facts: &BTreeSet<Fact>) -> BTreeSet<Fact> {
    facts
        .iter()
        .filter(|f| matches!(f.pred.as_str(), "visible" | "reachable"))
        .filter(|f| [GREY, WHITE].contains(&f.args[0].as_str()))
        .cloned()
        .collect()
}

fn pattern(rows: &[(&str, &str, u8, u8)]) -> BTreeSet<Fact> {
    rows.iter()
        .flat_map(|&(o, a, v, r)| [fact("visible", o, a, v), fact("reachable", o, a, r)])
        .collect()
}

pub fn method_preference() {
    let spec = scenario("method-preference").unwrap();
    let report = run_scenario(&spec).unwrap();
    assert!(report.pass, "{}", report.diagnostics.join("\n"));
    let names = report.run.action_names();
    assert_eq!(count(&report.run, "MAKEBKACC"), 1, "{names:?}");
    assert_eq!(count(&report.run, "GIVEBK"), 0, "{names:?}");
    assert_sound(&report.run, &spec.config());
    assert_eq!(run_scenario(&spec).unwrap().run.action_names(), names);

    // Handing over works on the same scene once placing is not on offer.
    let full = build_domain().unwrap();
    let without_m3 = HtnDomain::new(
        full.operators().to_vec(),
        full.methods()
            .iter()
            .filter(|m| m.name.as_str() != "m3")
            .cloned()
            .collect(),
    )
    .unwrap();
    let problem = spec.desk.problem(&without_m3).unwrap();
    let cfg = spec.config();
    let run = interleaved_plan(&problem, &build_scene(spec.variant, spec.seed), &cfg).unwrap();
    assert!(run.succeeded(), "m4 alone fails");
    assert_eq!(count(&run, "GIVEBK"), 1, "{:?}", run.action_names());
    assert_sound(&run, &cfg);
}

pub fn cramped_reception() {
    let spec = scenario("fig3-mixed-strategy").unwrap();
    let report = run_scenario(&spec).unwrap();
    assert!(report.pass, "{}", report.diagnostics.join("\n"));
    let run = &report.run;
    assert_eq!(count(run, "GIVEBK"), 1, "{:?}", run.action_names());
    assert_eq!(count(run, "MAKEBKACC"), 1, "{:?}", run.action_names());
    assert!(run.stats.htn.backtracks >= 1);
    assert_sound(run, &spec.config());

    let spec = scenario("fig3-blocked").unwrap();
    let report = run_scenario(&spec).unwrap();
    assert!(report.pass, "{}", report.diagnostics.join("\n"));
    let run = &report.run;
    match &run.result {
        Err(PlanError::Exhausted(stats)) => assert!(stats.backtracks >= 1, "{stats:?}"),
        other => panic!("expected exhaustion, got {:?}", other.as_ref().map(|s| s.plan.len())),
    }
    // Both levels were searched: geometric alternatives and other methods.
    assert!(run.stats.geo_alternatives >= 1);
    assert!(run.stats.htn.backtracks >= 1);
    assert!(run.stats.gtp.iter().all(|s| !s.timed_out));
}

pub fn occlusion_repair() {
    let spec = scenario("fig4-occlusion").unwrap();
    let report = run_scenario(&spec).unwrap();
    assert!(report.pass, "{}", report.diagnostics.join("\n"));
    let run = &report.run;
    assert_eq!(run.stats.geo_alternatives, 1);
    assert_eq!(run.stats.htn.backtracks, 0);
    assert_sound(run, &spec.config());
    let end = &run.result.as_ref().unwrap().world.scene;
    let got = book_pattern(&derive_facts(end, &spec.config().thresholds));
    let want = pattern(&[
        (GREY, MEMBER, 1, 1),
        (WHITE, MEMBER, 1, 1),
        (GREY, ROBOT, 1, 1),
        (WHITE, ROBOT, 1, 1),
    ]);
    assert_eq!(got, want);

    let got = book_pattern(&derive_facts(&calibration_fig5(), &Default::default()));
    let want = pattern(&[
        (GREY, MEMBER, 3, 4),
        (WHITE, MEMBER, 4, 4),
        (GREY, ROBOT, 1, 1),
        (WHITE, ROBOT, 1, 1),
    ]);
    assert_eq!(got, want);
}
