use std::collections::BTreeSet;

use crate::geo::{derive_facts, GeoError, Pose, Scene, Thresholds};
use crate::symbolic::Fact;

use super::solve::verify_step;
use super::{GtpConfig, GtpError, GtpSolution, GtpTask, Step};

/// Moves the step's object and anything resting in or on it.
pub fn apply_step(scene: &mut Scene, step: &Step) -> Result<(), GeoError> {
    let old = scene.object(&step.object)?.pose;
    let carried: Vec<String> = scene.contents(&step.object).into_iter().map(String::from).collect();
    let new = step.pose;
    let dyaw = new.yaw - old.yaw;
    for name in carried {
        let o = scene.object_mut(&name)?;
        let rel = o.pose.xy().sub(old.xy()).rotate(dyaw);
        o.pose = Pose {
            x: new.x + rel.x,
            y: new.y + rel.y,
            z: o.pose.z + (new.z - old.z),
            yaw: o.pose.yaw + dyaw,
        };
    }
    let o = scene.object_mut(&step.object)?;
    o.pose = new;
    o.support = step.support.clone();
    o.held_grasp = step.held_grasp;
    Ok(())
}

/// Applies steps without touching the version.
pub fn apply_steps(scene: &mut Scene, steps: &[Step]) -> Result<(), GeoError> {
    steps.iter().try_for_each(|s| apply_step(scene, s))
}

/// Commits a solution. The solution must have been computed on the scene's
/// current version.
pub fn apply_solution(scene: &mut Scene, solution: &GtpSolution) -> Result<(), GeoError> {
    if solution.scene_version != scene.version + 1 {
        return Err(GeoError::VersionConflict {
            current: scene.version,
            found: solution.scene_version.saturating_sub(1),
        });
    }
    apply_steps(scene, &solution.steps)?;
    scene.version += 1;
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Effects {
    pub add: BTreeSet<Fact>,
    pub del: BTreeSet<Fact>,
}

/// Shared facts gained and lost between two scenes.
pub fn effects(before: &Scene, after: &Scene, th: &Thresholds) -> Effects {
    let a = derive_facts(before, th);
    let b = derive_facts(after, th);
    Effects {
        add: b.difference(&a).cloned().collect(),
        del: a.difference(&b).cloned().collect(),
    }
}

/// Re-checks every step of `solution` from scratch on `scene`, returning the
/// first violated constraint.
pub fn check_solution(task: &GtpTask, scene: &Scene, solution: &GtpSolution, cfg: &GtpConfig) -> Result<(), GtpError> {
    let chain = task.chain();
    if chain.len() != solution.steps.len() {
        return Err(GtpError::Contract(format!(
            "{} steps for {} components",
            solution.steps.len(),
            chain.len()
        )));
    }
    let mut cur = scene.clone();
    for (t, s) in chain.into_iter().zip(&solution.steps) {
        verify_step(t, &cur, s, cfg).map_err(GtpError::Contract)?;
        apply_step(&mut cur, s)?;
    }
    Ok(())
}
