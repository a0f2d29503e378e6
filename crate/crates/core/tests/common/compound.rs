//! Joint search over pick and placement against an exhaustive enumeration of
//! grasp, position and orientation triples.
use std::collections::BTreeSet;

use super::pen::{g_key, joint_oracle, pen_scene, Wall, ALL};
use htngtp::geo::{Support, Vec2};
use htngtp::gtp::{apply_solution, resume, solve, GtpConfig, GtpTask, TaskKind};

fn pick_and_pen() -> GtpTask {
    GtpTask::compound(vec![GtpTask::pick("o"), GtpTask::put_on("o", "pen")])
}

/// All joint solutions, by resuming until the search runs dry.
fn enumerate(walls: &[Wall]) -> BTreeSet<(usize, i64, i64, usize)> {
    let s = pen_scene(walls);
    let cfg = GtpConfig::default();
    let task = pick_and_pen();
    let mut out = solve(&task, &s, &cfg).unwrap();
    let mut found = BTreeSet::new();
    while let Some(sol) = out.solution.take() {
        let place = &sol.steps[1];
        assert_eq!(place.kind, TaskKind::PutOn);
        assert_eq!(sol.steps[0].grasp, place.grasp, "regrasped between pick and place");
        let key = g_key(
            place.grasp,
            Vec2::new(place.target.x, place.target.y),
            place.orientation,
        );
        assert!(found.insert(key), "solution {key:?} returned twice");
        let mut end = s.clone();
        apply_solution(&mut end, &sol).unwrap();
        assert_eq!(end.object("o").unwrap().support, Support::Surface("pen".into()));
        out = resume(&task, &s, out.checkpoint, &cfg).unwrap();
    }
    assert!(out.checkpoint.exhausted);
    found
}

pub fn fully_walled_pen_is_jointly_infeasible() {
    let s = pen_scene(&ALL);
    let cfg = GtpConfig::default();
    assert!(joint_oracle(&ALL).is_empty());

    // One component at a time: the pick goes through and the failure only
    // shows once the block is already in the gripper.
    let picked = solve(&GtpTask::pick("o"), &s, &cfg)
        .unwrap()
        .solution
        .expect("pick alone succeeds");
    let mut held = s.clone();
    apply_solution(&mut held, &picked).unwrap();
    assert!(solve(&GtpTask::put_on("o", "pen"), &held, &cfg)
        .unwrap()
        .solution
        .is_none());

    let joint = solve(&pick_and_pen(), &s, &cfg).unwrap();
    assert!(joint.solution.is_none());
    assert!(joint.checkpoint.exhausted);
    assert!(!joint.stats.timed_out);
}

pub fn joint_solutions_match_the_enumeration() {
    // One centred spot and four quarter turns. Each open side admits the one
    // grasp facing it per turn.
    for mask in 0..16u32 {
        let walls: Vec<Wall> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| ALL[i]).collect();
        let want = joint_oracle(&walls);
        assert_eq!(want.len(), 4 * (4 - walls.len()), "{walls:?}");
        assert_eq!(enumerate(&walls), want, "walls {walls:?}");
    }
}
