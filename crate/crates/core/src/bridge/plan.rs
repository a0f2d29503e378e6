use std::time::Instant;

use crate::geo::{derive_facts, Scene, Thresholds};
use crate::gtp::{apply_solution, check_solution, GtpConfig};
use crate::htn::{PlanConfig, PlanError, PlanStep, Planner, Solution};
use crate::symbolic::{apply, holds, EvalError, Fact, GeoEffects, HtnProblem, State, Universe};

use super::binding::Binding;
use super::hooks::{BridgeHooks, GeoNote, GeoSituation, GeoWorld};
use super::{BridgeError, CombinedStats, Strategy};

#[derive(Clone, Debug)]
pub struct BridgeConfig {
    pub binding: Binding,
    pub strategy: Strategy,
    pub gtp: GtpConfig,
    pub thresholds: Thresholds,
    pub plan: PlanConfig,
}

impl Default for BridgeConfig {
    fn default() -> Self {
        BridgeConfig {
            binding: Binding::librarian(),
            strategy: Strategy::default(),
            gtp: GtpConfig::default(),
            thresholds: Thresholds::default(),
            plan: PlanConfig::default(),
        }
    }
}

pub struct PlanRun {
    /// The problem with shared literals of the initial scene in its state.
    pub problem: HtnProblem,
    pub scene: Scene,
    pub result: Result<Solution<GeoWorld, GeoNote>, PlanError>,
    pub stats: CombinedStats,
}

impl PlanRun {
    pub fn succeeded(&self) -> bool {
        self.result.is_ok()
    }

    /// Operator names of the plan, empty on failure.
    pub fn action_names(&self) -> Vec<String> {
        match &self.result {
            Ok(s) => s.plan.iter().map(|p| p.action.op.to_string()).collect(),
            Err(_) => vec![],
        }
    }
}

/// `problem` with its shared literals taken from `scene`.
pub fn grounded_problem(problem: &HtnProblem, scene: &Scene, th: &Thresholds) -> HtnProblem {
    let mut p = problem.clone();
    p.init.replace_shared(derive_facts(scene, th));
    p
}

/// HTN refinement with geometric evaluation of `t?` literals.
pub fn interleaved_plan(problem: &HtnProblem, scene: &Scene, cfg: &BridgeConfig) -> Result<PlanRun, BridgeError> {
    let unbound = cfg.binding.unbound(&problem.domain);
    if !unbound.is_empty() {
        return Err(BridgeError::Unbound(unbound.join(", ")));
    }
    scene.validate()?;
    let t0 = Instant::now();
    let p = grounded_problem(problem, scene, &cfg.thresholds);
    let planner = Planner::new(&p, cfg.plan);
    let mut hooks = BridgeHooks::new(cfg.binding.clone(), cfg.strategy, cfg.gtp.clone(), cfg.thresholds);
    let result = planner.plan(&p, &mut hooks, GeoWorld::new(scene.clone()));
    let mut stats = hooks.stats;
    stats.htn = match &result {
        Ok(s) => s.stats.clone(),
        Err(e) => e.stats().cloned().unwrap_or_default(),
    };
    stats.wall = t0.elapsed().as_secs_f64();
    Ok(PlanRun {
        problem: p,
        scene: scene.clone(),
        result,
        stats,
    })
}

/// Result of replaying a pursued prefix over a changed scene.
#[derive(Clone, Debug)]
pub struct Reconciled {
    /// State after the kept prefix.
    pub state: State,
    /// Kept steps, rebased on the changed states.
    pub steps: Vec<PlanStep<GeoNote>>,
    /// Offsets into the prefix of actions whose preconditions fail under
    /// the updated state. GS actions always count: their solutions belong to
    /// a superseded scene.
    pub invalidated: Vec<usize>,
}

/// Replaces the shared literals of `state` with those of `scene` and replays
/// `prefix` over it.
pub fn reconcile(
    planner: &Planner,
    binding: &Binding,
    th: &Thresholds,
    state: &State,
    scene: &Scene,
    prefix: &[PlanStep<GeoNote>],
) -> Result<Reconciled, PlanError> {
    let mut cur = state.clone();
    cur.replace_shared(derive_facts(scene, th));
    let mut out = Reconciled {
        state: cur.clone(),
        steps: vec![],
        invalidated: vec![],
    };
    let mut stub = |a: &Fact| -> Result<bool, EvalError> {
        match binding.task_for(a) {
            Ok(None) => Ok(true),
            _ => Ok(false),
        }
    };
    for (i, s) in prefix.iter().enumerate() {
        let op = planner
            .domain
            .operator(&s.action.op)
            .ok_or_else(|| PlanError::Hook(format!("unknown operator {}", s.action.op)))?;
        let geometric = op
            .gtp_atom()
            .map(|a| a.ground(&s.action.binding))
            .transpose()?
            .is_some_and(|f| !matches!(binding.task_for(&f), Ok(None)));
        let ok = !geometric && !holds(&op.pre, &cur, &planner.universe, &s.action.binding, &mut stub)?.is_empty();
        if !ok {
            out.invalidated.push(i);
        }
        let next = apply(&cur, op, &s.action.binding, &GeoEffects::default())?;
        if out.invalidated.is_empty() {
            out.steps.push(PlanStep {
                state_before: cur.clone(),
                geo: GeoEffects::default(),
                ..s.clone()
            });
            out.state = next.clone();
        }
        cur = next;
    }
    Ok(out)
}

/// New situation after log entry `idx` of `world` took another solution:
/// the GS step that owns the entry gets the new effects, later steps are
/// replayed up to the first one invalidated, and refinement resumes there.
pub(crate) fn fast_forward(
    hooks: &BridgeHooks,
    planner: &Planner,
    cur: &GeoSituation,
    idx: usize,
    mut world: GeoWorld,
) -> Result<Option<GeoSituation>, PlanError> {
    let Some(p) = cur
        .plan
        .iter()
        .position(|s| s.note.as_ref().is_some_and(|n| n.log_index == idx))
    else {
        return Ok(None);
    };
    let entry = world.log.entries[idx].clone();
    let mut scene = entry.before.clone();
    apply_solution(&mut scene, &entry.solution).map_err(|e| PlanError::Hook(e.to_string()))?;
    let step = &cur.plan[p];
    let op = planner
        .domain
        .operator(&step.action.op)
        .ok_or_else(|| PlanError::Hook(format!("unknown operator {}", step.action.op)))?;
    let geo = hooks.geo_effects(&entry.before, &scene);
    let after = apply(&step.state_before, op, &step.action.binding, &geo)?;
    let mut plan = cur.plan[..p].to_vec();
    plan.push(PlanStep {
        geo,
        note: Some(GeoNote {
            log_index: idx,
            task: entry.task.clone(),
            solution: entry.solution.clone(),
        }),
        ..step.clone()
    });
    let rest = &cur.plan[p + 1..];
    let r = reconcile(planner, &hooks.binding, &hooks.thresholds, &after, &scene, rest)?;
    world.scene = scene;
    world.pins.clear();
    plan.extend(r.steps);
    let sit = match r.invalidated.first() {
        Some(&k) => {
            let at = &rest[k];
            GeoSituation {
                tasks: at.tasks_before.clone(),
                state: r.state,
                plan,
                chosen: cur.chosen[..at.chosen_before].to_vec(),
                world,
            }
        }
        None => GeoSituation {
            tasks: cur.tasks.clone(),
            state: r.state,
            plan,
            chosen: cur.chosen.clone(),
            world,
        },
    };
    Ok(Some(sit))
}

/// Replays a plan from the initial state and scene: every precondition must
/// hold, evaluable literals are re-checked against the replayed scene, and
/// effects must match the recorded ones. Returns the final scene.
pub fn replay_plan(
    problem: &HtnProblem,
    scene: &Scene,
    plan: &[PlanStep<GeoNote>],
    cfg: &BridgeConfig,
) -> Result<Scene, String> {
    let th = &cfg.thresholds;
    let universe: Universe = problem.universe();
    let mut state = problem.init.clone();
    state.replace_shared(derive_facts(scene, th));
    let mut cur = scene.clone();
    for (i, s) in plan.iter().enumerate() {
        let ctx = |m: String| format!("step {i} {}: {m}", s.action);
        let op = problem
            .domain
            .operator(&s.action.op)
            .ok_or_else(|| ctx("unknown operator".into()))?;
        let gtp_fact = op
            .gtp_atom()
            .map(|a| a.ground(&s.action.binding))
            .transpose()
            .map_err(|e| ctx(e.to_string()))?;
        let mut eval = |a: &Fact| -> Result<bool, EvalError> {
            match cfg.binding.task_for(a) {
                Ok(None) => Ok(true),
                Ok(Some(task)) => {
                    if Some(a) != gtp_fact.as_ref() {
                        return Err(EvalError::Config(format!("unexpected evaluable literal {a}")));
                    }
                    let Some(note) = &s.note else {
                        return Ok(false);
                    };
                    if note.task != task || note.solution.base_fingerprint != cur.fingerprint() {
                        return Ok(false);
                    }
                    Ok(check_solution(&task, &cur, &note.solution, &cfg.gtp).is_ok())
                }
                Err(e) => Err(EvalError::Config(e)),
            }
        };
        let ok = holds(&op.pre, &state, &universe, &s.action.binding, &mut eval).map_err(|e| ctx(e.to_string()))?;
        if ok.is_empty() {
            return Err(ctx("precondition does not hold on replay".into()));
        }
        let geo = match &s.note {
            Some(note) => {
                let before = cur.clone();
                apply_solution(&mut cur, &note.solution).map_err(|e| ctx(e.to_string()))?;
                let e = crate::gtp::effects(&before, &cur, th);
                GeoEffects {
                    adds: e.add,
                    deletes: e.del,
                }
            }
            None => GeoEffects::default(),
        };
        if geo != s.geo {
            return Err(ctx("geometric effects differ from the recorded ones".into()));
        }
        state = apply(&state, op, &s.action.binding, &geo).map_err(|e| ctx(e.to_string()))?;
        if state.shared() != &derive_facts(&cur, th) {
            return Err(ctx("shared literals drifted from the scene".into()));
        }
    }
    Ok(cur)
}
