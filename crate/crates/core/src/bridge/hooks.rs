use std::collections::BTreeMap;
use std::time::Instant;

use crate::geo::{Scene, Thresholds};
use crate::gtp::{
    apply_solution, effects, solve, Checkpoint, GtpConfig, GtpSolution, GtpStats, GtpTask, SolveOutcome,
    TaskSequenceLog,
};
use crate::htn::{Commit, HeadFailure, Hooks, PlanError, Planner, Situation, Trace};
use crate::symbolic::{EvalError, Fact, GeoEffects, GroundAction, Operator, State, TaskInst};

use super::binding::Binding;
use super::plan::fast_forward;
use super::{CombinedStats, Mode, Strategy};

/// A solution found while evaluating `t?`, waiting for its GS action.
#[derive(Clone, Debug)]
pub struct Pin {
    pub task: GtpTask,
    pub fingerprint: u64,
    pub solution: GtpSolution,
    pub checkpoint: Checkpoint,
    pub stats: GtpStats,
}

/// Geometric side of a search situation. Cloned into every choice point, so
/// backtracking restores the scene, the task log and any pins.
#[derive(Clone, Debug)]
pub struct GeoWorld {
    pub scene: Scene,
    pub log: TaskSequenceLog,
    pub pins: BTreeMap<Fact, Pin>,
}

impl GeoWorld {
    pub fn new(scene: Scene) -> Self {
        GeoWorld {
            scene,
            log: TaskSequenceLog::new(),
            pins: BTreeMap::new(),
        }
    }
}

/// What a GS plan step carries besides its symbolic action.
#[derive(Clone, Debug)]
pub struct GeoNote {
    pub log_index: usize,
    pub task: GtpTask,
    pub solution: GtpSolution,
}

#[derive(Clone, Debug)]
struct Cached {
    task: GtpTask,
    found: Option<(GtpSolution, Checkpoint)>,
}

pub struct BridgeHooks {
    pub binding: Binding,
    pub strategy: Strategy,
    pub gtp: GtpConfig,
    pub thresholds: Thresholds,
    pub stats: CombinedStats,
    cache: BTreeMap<(Fact, u64), Cached>,
    /// Alternatives spent per failing head, keyed by task and plan position.
    attempts: BTreeMap<(TaskInst, usize), usize>,
}

impl BridgeHooks {
    pub fn new(binding: Binding, strategy: Strategy, gtp: GtpConfig, thresholds: Thresholds) -> Self {
        BridgeHooks {
            binding,
            strategy,
            gtp,
            thresholds,
            stats: CombinedStats::default(),
            cache: BTreeMap::new(),
            attempts: BTreeMap::new(),
        }
    }

    fn record(&mut self, s: &GtpStats) {
        self.stats.gtp.push(s.clone());
    }

    /// Solves `atom` on `scene`, reusing an earlier result for the same
    /// scene content.
    fn solve_atom(&mut self, scene: &Scene, atom: &Fact, task: GtpTask) -> Result<Option<Pin>, EvalError> {
        let fp = scene.fingerprint();
        let key = (atom.clone(), fp);
        if let Some(c) = self.cache.get(&key) {
            self.stats.cache_hits += 1;
            return Ok(c.found.clone().map(|(solution, checkpoint)| Pin {
                task: c.task.clone(),
                fingerprint: fp,
                solution,
                checkpoint,
                stats: GtpStats::default(),
            }));
        }
        let out: SolveOutcome = solve(&task, scene, &self.gtp).map_err(|e| EvalError::Config(e.to_string()))?;
        self.record(&out.stats);
        let found = out.solution.map(|s| (s, out.checkpoint));
        self.cache.insert(
            key,
            Cached {
                task: task.clone(),
                found: found.clone(),
            },
        );
        Ok(found.map(|(solution, checkpoint)| Pin {
            task,
            fingerprint: fp,
            solution,
            checkpoint,
            stats: out.stats,
        }))
    }

    pub(crate) fn geo_effects(&self, before: &Scene, after: &Scene) -> GeoEffects {
        let e = effects(before, after, &self.thresholds);
        GeoEffects {
            adds: e.add,
            deletes: e.del,
        }
    }
}

impl Hooks for BridgeHooks {
    type World = GeoWorld;
    type Note = GeoNote;

    fn evaluate(&mut self, world: &mut GeoWorld, atom: &Fact) -> Result<bool, EvalError> {
        let task = self.binding.task_for(atom).map_err(EvalError::Config)?;
        let Some(task) = task else { return Ok(true) };
        if let Some(p) = world.pins.get(atom) {
            if p.fingerprint == world.scene.fingerprint() {
                return Ok(true);
            }
        }
        match self.solve_atom(&world.scene, atom, task)? {
            Some(pin) => {
                world.pins.insert(atom.clone(), pin);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn commit(
        &mut self,
        world: &mut GeoWorld,
        op: &Operator,
        action: &GroundAction,
        _state: &State,
    ) -> Result<Commit<GeoNote>, PlanError> {
        let plain = Commit::Applied {
            geo: GeoEffects::default(),
            note: None,
            marker: false,
        };
        let Some(atom) = op.gtp_atom() else {
            return Ok(plain);
        };
        let fact = atom.ground(&action.binding)?;
        let Some(task) = self.binding.task_for(&fact).map_err(PlanError::Hook)? else {
            return Ok(plain);
        };
        let fp = world.scene.fingerprint();
        let pin = match world.pins.remove(&fact) {
            Some(p) if p.fingerprint == fp => p,
            _ => match self
                .solve_atom(&world.scene, &fact, task)
                .map_err(|e| PlanError::Hook(e.to_string()))?
            {
                Some(p) => p,
                None => return Ok(Commit::Failed),
            },
        };
        let before = world.scene.clone();
        apply_solution(&mut world.scene, &pin.solution).map_err(|e| PlanError::Hook(e.to_string()))?;
        let geo = self.geo_effects(&before, &world.scene);
        world.pins.clear();
        world.log.push(
            pin.task.clone(),
            before,
            SolveOutcome {
                solution: Some(pin.solution.clone()),
                checkpoint: pin.checkpoint,
                stats: pin.stats,
                events: vec![],
            },
        );
        Ok(Commit::Applied {
            geo,
            note: Some(GeoNote {
                log_index: world.log.len() - 1,
                task: pin.task,
                solution: pin.solution,
            }),
            marker: true,
        })
    }

    /// Geometric backtracking: asks earlier log entries, latest first, for
    /// another solution and resumes the plan from the first pursued action
    /// the change invalidates.
    fn repair(
        &mut self,
        planner: &Planner,
        trace: &mut Trace<GeoWorld, GeoNote>,
        failure: &HeadFailure,
    ) -> Result<bool, PlanError> {
        if self.strategy.mode == Mode::HtnOnly || !failure.geometric {
            return Ok(false);
        }
        let Some(cur) = trace.current.clone() else {
            return Ok(false);
        };
        let key = (failure.task.clone(), cur.plan.len());
        let mut used = self.attempts.get(&key).copied().unwrap_or(0);
        let mut result = None;
        'entries: for idx in (0..cur.world.log.len()).rev() {
            let mut world = cur.world.clone();
            while used < self.strategy.budget {
                used += 1;
                self.stats.geo_alternatives += 1;
                let t0 = Instant::now();
                let out = world
                    .log
                    .alternative(idx, &self.gtp)
                    .map_err(|e| PlanError::Hook(e.to_string()))?;
                let mut s = out.stats.clone();
                s.time = t0.elapsed().as_secs_f64();
                self.record(&s);
                if out.solution.is_none() {
                    continue 'entries;
                }
                if let Some(sit) = fast_forward(self, planner, &cur, idx, world.clone())? {
                    result = Some(sit);
                    break 'entries;
                }
            }
            break;
        }
        self.stats.max_attempts_per_failure = self.stats.max_attempts_per_failure.max(used);
        self.attempts.insert(key, used);
        match result {
            Some(sit) => {
                self.stats.geo_repairs += 1;
                trace.current = Some(sit);
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

pub(crate) type GeoSituation = Situation<GeoWorld, GeoNote>;
