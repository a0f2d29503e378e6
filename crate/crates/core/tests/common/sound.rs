//! Replay of a finished plan, plus physical checks on every intermediate
//! scene that do not go through the planner's own search code.

use htngtp::bridge::{replay_plan, BridgeConfig, PlanRun};
use htngtp::geo::{Scene, Support};
use htngtp::gtp::{apply_solution, check_solution};

/// Objects resting on surfaces lie inside them at their height, and no two
/// resting objects interpenetrate.
pub fn physically_plausible(scene: &Scene) -> Result<(), String> {
    scene.validate().map_err(|e| e.to_string())?;
    let resting: Vec<_> = scene
        .objects
        .iter()
        .filter(|o| !matches!(o.support, Support::Gripper(_) | Support::Inside(_)))
        .collect();
    for o in &resting {
        if let Support::Surface(s) = &o.support {
            let s = scene.surface(s).map_err(|e| e.to_string())?;
            if (o.pose.z - s.top).abs() > 1e-9 {
                return Err(format!("{} floats above {}", o.name, s.name));
            }
            if !s.footprint.contains_polygon(&o.world_footprint(), 1e-7) {
                return Err(format!("{} overhangs {}", o.name, s.name));
            }
        }
    }
    for (i, a) in resting.iter().enumerate() {
        for b in &resting[i + 1..] {
            if a.prism().overlaps(&b.prism(), 1e-7) {
                return Err(format!("{} and {} interpenetrate", a.name, b.name));
            }
        }
    }
    Ok(())
}

/// Panics unless the plan of `run` replays from its initial state and scene.
/// On top of the symbolic replay, every geometric solution is re-checked
/// against the scene it was computed on and each scene is checked for
/// plausibility. Returns the number of steps with geometry.
pub fn assert_sound(run: &PlanRun, cfg: &BridgeConfig) -> usize {
    let sol = run.result.as_ref().expect("a plan to replay");
    let end = replay_plan(&run.problem, &run.scene, &sol.plan, cfg).unwrap_or_else(|e| panic!("replay: {e}"));
    assert!(end == sol.world.scene, "replay ends in a different scene");
    let mut cur = run.scene.clone();
    physically_plausible(&cur).unwrap_or_else(|e| panic!("initial scene: {e}"));
    let mut geometric = 0;
    for (i, step) in sol.plan.iter().enumerate() {
        let Some(note) = &step.note else { continue };
        assert_eq!(
            note.solution.base_fingerprint,
            cur.fingerprint(),
            "step {i} was solved on another scene"
        );
        check_solution(&note.task, &cur, &note.solution, &cfg.gtp)
            .unwrap_or_else(|e| panic!("step {i} {}: {e}", step.action));
        apply_solution(&mut cur, &note.solution).unwrap();
        physically_plausible(&cur).unwrap_or_else(|e| panic!("after step {i} {}: {e}", step.action));
        geometric += 1;
    }
    assert!(cur == end);
    geometric
}
