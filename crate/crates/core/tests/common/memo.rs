//! Failure memoization across effort levels, checked in instrumented and
//! forced re-test runs.
use std::collections::BTreeMap;

use htngtp::geo::Scene;
use htngtp::gtp::{resume, solve, Event, GtpConfig, GtpTask, MemoKey};
use htngtp::librarian::{calibration_fig5, reception_cramped, reception_open, BOOK_1, GREY, MEMBER, WHITE};

fn cases() -> Vec<(&'static str, Scene, GtpTask)> {
    vec![
        (
            "open white accessible",
            reception_open(),
            GtpTask::make_acc(WHITE, MEMBER, 0.5),
        ),
        (
            "calibration grey accessible",
            calibration_fig5(),
            GtpTask::make_acc(GREY, MEMBER, 0.5),
        ),
        (
            "calibration grey put away",
            calibration_fig5(),
            GtpTask::put_away(GREY, MEMBER),
        ),
        (
            "calibration white put away",
            calibration_fig5(),
            GtpTask::put_away(WHITE, MEMBER),
        ),
        (
            "cramped book put away",
            reception_cramped(),
            GtpTask::put_away(BOOK_1, MEMBER),
        ),
        (
            "calibration pick then accessible",
            calibration_fig5(),
            GtpTask::compound(vec![GtpTask::pick(WHITE), GtpTask::make_acc(WHITE, MEMBER, 0.5)]),
        ),
    ]
}

/// Events of a first solve and up to two resumes, with the solutions found.
/// Effort, candidate, grasp and orientation of a solution's last step.
type Tuple = (u8, usize, usize, usize);

fn trace(scene: &Scene, task: &GtpTask, cfg: &GtpConfig) -> (Vec<Event>, Vec<Option<Tuple>>) {
    let mut out = solve(task, scene, cfg).unwrap();
    let mut events = out.events.clone();
    let mut found = vec![out.solution.as_ref().map(|s| s.steps.last().unwrap().tuple())];
    for _ in 0..2 {
        if out.solution.is_none() {
            break;
        }
        out = resume(task, scene, out.checkpoint, cfg).unwrap();
        events.extend(out.events.iter().cloned());
        found.push(out.solution.as_ref().map(|s| s.steps.last().unwrap().tuple()));
    }
    (events, found)
}

pub fn memoized_failures_are_never_retried_at_higher_effort() {
    let cfg = GtpConfig {
        instrument: true,
        ..Default::default()
    };
    let mut skipped = 0;
    for (name, scene, task) in cases() {
        // Each chain component keeps its own memo, so keys of a compound
        // trace are not comparable across components.
        if task.components.len() > 1 {
            continue;
        }
        let (events, _) = trace(&scene, &task, &cfg);
        let mut memo: BTreeMap<MemoKey, u8> = BTreeMap::new();
        {
            for e in &events {
                match e {
                    Event::Memoized { key, effort } => {
                        memo.entry(*key).or_insert(*effort);
                    }
                    Event::Tested { key, effort } => {
                        if let Some(&at) = memo.get(key) {
                            assert!(*effort < at, "{name}: {key:?} excluded at {at} retried at {effort}");
                        }
                    }
                    Event::Skipped { key, effort } => {
                        let at = memo.get(key).copied();
                        assert!(
                            at.is_some_and(|at| at <= *effort),
                            "{name}: {key:?} skipped without a memo entry"
                        );
                        skipped += 1;
                    }
                    Event::Retested { .. } => panic!("{name}: retest event outside re-test mode"),
                    Event::Visibility { .. } => {}
                }
            }
        }
    }
    assert!(skipped > 100, "only {skipped} skips over the suite");
}

pub fn skipped_candidates_fail_when_retested() {
    let plain = GtpConfig {
        instrument: true,
        ..Default::default()
    };
    let forced = GtpConfig {
        retest_memo: true,
        ..plain.clone()
    };
    for (name, scene, task) in cases() {
        let (normal, found) = trace(&scene, &task, &plain);
        let (retest, found_again) = trace(&scene, &task, &forced);
        assert_eq!(found, found_again, "{name}: re-testing changed the solutions");
        let mut retested: BTreeMap<(MemoKey, u8), usize> = BTreeMap::new();
        for e in &retest {
            if let Event::Retested {
                key,
                effort,
                still_fails,
            } = e
            {
                assert!(still_fails, "{name}: memoized {key:?} passes at effort {effort}");
                *retested.entry((*key, *effort)).or_default() += 1;
            }
        }
        for e in &normal {
            if let Event::Skipped { key, effort } = e {
                assert!(
                    retested.contains_key(&(*key, *effort)),
                    "{name}: skip of {key:?} at {effort} never retested"
                );
            }
        }
        assert!(retest.iter().all(|e| !matches!(e, Event::Skipped { .. })), "{name}");
    }
}
