use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::symbolic::{
    apply, holds, static_effects, Binding, EvalError, Evaluator, Fact, GeoEffects, GroundAction, HtnDomain, HtnProblem,
    Operator, State, Sym, TaskInst, Universe,
};

use super::tasks::TaskList;
use super::{PlanError, PlanStats};

/// Callbacks that attach geometry (or anything else) to the symbolic search.
///
/// `World` is snapshotted with every choice point, so anything stored in it
/// is restored on backtracking.
pub trait Hooks {
    type World: Clone;
    type Note: Clone;

    /// Decides one ground evaluable literal in `world`.
    fn evaluate(&mut self, world: &mut Self::World, atom: &Fact) -> Result<bool, EvalError>;

    /// Called once an action's precondition held under the chosen binding.
    fn commit(
        &mut self,
        world: &mut Self::World,
        op: &Operator,
        action: &GroundAction,
        state: &State,
    ) -> Result<Commit<Self::Note>, PlanError>;

    /// Offered every head failure before chronological backtracking. Returning
    /// `true` means `trace.current` now holds a situation to continue from.
    fn repair(
        &mut self,
        _planner: &Planner,
        _trace: &mut Trace<Self::World, Self::Note>,
        _failure: &HeadFailure,
    ) -> Result<bool, PlanError> {
        Ok(false)
    }
}

pub enum Commit<N> {
    Applied {
        geo: GeoEffects,
        note: Option<N>,
        /// Push a solution-choice marker after this step.
        marker: bool,
    },
    Failed,
}

/// Hooks without geometry: evaluable literals go to a plain evaluator and
/// actions carry no geometric effects.
pub struct SymbolicHooks<E>(pub E);

impl<E: Evaluator> Hooks for SymbolicHooks<E> {
    type World = ();
    type Note = ();

    fn evaluate(&mut self, _world: &mut (), atom: &Fact) -> Result<bool, EvalError> {
        self.0.evaluate(atom)
    }

    fn commit(&mut self, _: &mut (), _: &Operator, _: &GroundAction, _: &State) -> Result<Commit<()>, PlanError> {
        Ok(Commit::Applied {
            geo: GeoEffects::default(),
            note: None,
            marker: false,
        })
    }
}

#[derive(Clone, Debug)]
pub struct PlanStep<N> {
    pub action: GroundAction,
    pub geo: GeoEffects,
    pub note: Option<N>,
    /// Remaining tasks with this action at the head.
    pub tasks_before: TaskList,
    pub state_before: State,
    /// Number of method choices made before this step.
    pub chosen_before: usize,
}

/// Everything needed to resume refinement from one point of the search.
#[derive(Clone, Debug)]
pub struct Situation<W, N> {
    pub tasks: TaskList,
    pub state: State,
    pub plan: Vec<PlanStep<N>>,
    /// Method decisions in the order they were made.
    pub chosen: Vec<(Sym, TaskInst)>,
    pub world: W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceKind {
    MethodChoice,
    BindingChoice,
    GtpSolutionChoice,
}

#[derive(Clone, Debug)]
pub enum Pending {
    Methods {
        /// First method rank not yet evaluated.
        next_rank: usize,
        /// Remaining ground alternatives of the method currently open.
        open: VecDeque<(Sym, Vec<TaskInst>)>,
    },
    Bindings(VecDeque<Binding>),
    Marker,
}

#[derive(Clone, Debug)]
pub struct ChoicePoint<W, N> {
    pub kind: ChoiceKind,
    /// Plan-prefix length at the choice.
    pub position: usize,
    pub pending: Pending,
    /// Pre-choice situation; the head task is still at the front.
    pub snapshot: Situation<W, N>,
}

impl<W, N> ChoicePoint<W, N> {
    pub fn marker(snapshot: Situation<W, N>) -> Self {
        ChoicePoint {
            kind: ChoiceKind::GtpSolutionChoice,
            position: snapshot.plan.len(),
            pending: Pending::Marker,
            snapshot,
        }
    }
}

/// Search state of one planning run.
#[derive(Clone, Debug)]
pub struct Trace<W, N> {
    /// `None` while a backtrack is needed.
    pub current: Option<Situation<W, N>>,
    pub stack: Vec<ChoicePoint<W, N>>,
    pub stats: PlanStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Primitive precondition false under every binding.
    Precondition,
    /// No method of an abstract task is applicable.
    NoMethod,
    /// Hooks refused to commit an action.
    CommitFailed,
    DepthLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadFailure {
    pub task: TaskInst,
    pub kind: FailureKind,
    /// The failing head is a GS action.
    pub geometric: bool,
}

#[derive(Debug)]
pub enum StepResult {
    Progressed,
    NeedsBacktrack(HeadFailure),
    Done,
}

#[derive(Debug, PartialEq, Eq)]
pub enum BacktrackResult {
    Restored,
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct Solution<W, N> {
    pub plan: Vec<PlanStep<N>>,
    pub state: State,
    pub world: W,
    pub chosen: Vec<(Sym, TaskInst)>,
    pub stats: PlanStats,
}

impl<W, N> Solution<W, N> {
    pub fn actions(&self) -> Vec<GroundAction> {
        self.plan.iter().map(|s| s.action.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanConfig {
    pub depth_limit: usize,
}

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig { depth_limit: 512 }
    }
}

/// Immutable planning context shared by every step of a run.
#[derive(Clone, Debug)]
pub struct Planner {
    pub domain: Arc<HtnDomain>,
    pub universe: Universe,
    pub config: PlanConfig,
}

struct HookEval<'a, H: Hooks> {
    hooks: &'a mut H,
    world: &'a mut H::World,
}

impl<H: Hooks> Evaluator for HookEval<'_, H> {
    fn evaluate(&mut self, atom: &Fact) -> Result<bool, EvalError> {
        self.hooks.evaluate(self.world, atom)
    }
}

impl Planner {
    pub fn new(problem: &HtnProblem, config: PlanConfig) -> Self {
        Planner {
            domain: problem.domain.clone(),
            universe: problem.universe(),
            config,
        }
    }

    pub fn start<W, N>(&self, problem: &HtnProblem, world: W) -> Trace<W, N> {
        Trace {
            current: Some(Situation {
                tasks: TaskList::from_tasks(&problem.tasks),
                state: problem.init.clone(),
                plan: Vec::new(),
                chosen: Vec::new(),
                world,
            }),
            stack: Vec::new(),
            stats: PlanStats::default(),
        }
    }

    /// Runs refinement to completion.
    pub fn plan<H: Hooks>(
        &self,
        problem: &HtnProblem,
        hooks: &mut H,
        world: H::World,
    ) -> Result<Solution<H::World, H::Note>, PlanError> {
        let mut trace = self.start(problem, world);
        self.run(hooks, &mut trace)
    }

    pub fn run<H: Hooks>(
        &self,
        hooks: &mut H,
        trace: &mut Trace<H::World, H::Note>,
    ) -> Result<Solution<H::World, H::Note>, PlanError> {
        loop {
            match self.step(hooks, trace)? {
                StepResult::Progressed => {}
                StepResult::Done => {
                    let sit = trace.current.take().expect("done implies a situation");
                    return Ok(Solution {
                        plan: sit.plan,
                        state: sit.state,
                        world: sit.world,
                        chosen: sit.chosen,
                        stats: trace.stats.clone(),
                    });
                }
                StepResult::NeedsBacktrack(failure) => {
                    if hooks.repair(self, trace, &failure)? && trace.current.is_some() {
                        continue;
                    }
                    trace.current = None;
                    if self.backtrack(hooks, trace)? == BacktrackResult::Exhausted {
                        let stats = trace.stats.clone();
                        return Err(if stats.depth_cuts > 0 {
                            PlanError::DepthLimit {
                                limit: self.config.depth_limit,
                                stats,
                            }
                        } else {
                            PlanError::Exhausted(stats)
                        });
                    }
                }
            }
        }
    }

    /// One refinement step on the head of the current task sequence.
    pub fn step<H: Hooks>(&self, hooks: &mut H, trace: &mut Trace<H::World, H::Note>) -> Result<StepResult, PlanError> {
        let Some(sit) = trace.current.as_mut() else {
            return Err(PlanError::Hook("step called without a current situation".into()));
        };
        let Some((task, depth)) = sit.tasks.head().map(|(t, d)| (t.clone(), d)) else {
            return Ok(StepResult::Done);
        };
        if let Some(op) = self.domain.operator(&task.name) {
            let mut bindings: VecDeque<Binding> = self.operator_bindings(hooks, sit, op, &task)?.into();
            let Some(first) = bindings.pop_front() else {
                return Ok(StepResult::NeedsBacktrack(HeadFailure {
                    task,
                    kind: FailureKind::Precondition,
                    geometric: op.is_gs(),
                }));
            };
            if !bindings.is_empty() {
                trace.stack.push(ChoicePoint {
                    kind: ChoiceKind::BindingChoice,
                    position: sit.plan.len(),
                    pending: Pending::Bindings(bindings),
                    snapshot: sit.clone(),
                });
            }
            return self.commit_head(hooks, &mut trace.stack, sit, &mut trace.stats, op, &task, first);
        }

        if depth >= self.config.depth_limit {
            trace.stats.depth_cuts += 1;
            return Ok(StepResult::NeedsBacktrack(HeadFailure {
                task,
                kind: FailureKind::DepthLimit,
                geometric: false,
            }));
        }
        let found = self.next_method(hooks, &mut trace.stats, sit, &task, 0)?;
        let Some((next_rank, mut open)) = found else {
            return Ok(StepResult::NeedsBacktrack(HeadFailure {
                task,
                kind: FailureKind::NoMethod,
                geometric: false,
            }));
        };
        let (method, body) = open.pop_front().expect("non-empty alternatives");
        if !open.is_empty() || next_rank < self.domain.methods_for(&task.name).len() {
            trace.stack.push(ChoicePoint {
                kind: ChoiceKind::MethodChoice,
                position: sit.plan.len(),
                pending: Pending::Methods { next_rank, open },
                snapshot: sit.clone(),
            });
        }
        expand(sit, &task, depth, method, &body);
        Ok(StepResult::Progressed)
    }

    /// Pops choice points until one yields a new alternative.
    pub fn backtrack<H: Hooks>(
        &self,
        hooks: &mut H,
        trace: &mut Trace<H::World, H::Note>,
    ) -> Result<BacktrackResult, PlanError> {
        while let Some(mut cp) = trace.stack.pop() {
            match &mut cp.pending {
                Pending::Marker => continue,
                Pending::Bindings(queue) => {
                    let Some(binding) = queue.pop_front() else {
                        continue;
                    };
                    let mut sit = cp.snapshot.clone();
                    let (task, _) = sit
                        .tasks
                        .head()
                        .map(|(t, d)| (t.clone(), d))
                        .expect("binding choice has a head");
                    let op = self.domain.operator(&task.name).expect("binding choice on a primitive");
                    let keep = !queue.is_empty();
                    if keep {
                        trace.stack.push(cp);
                    }
                    trace.stats.backtracks += 1;
                    match self.commit_head(hooks, &mut trace.stack, &mut sit, &mut trace.stats, op, &task, binding)? {
                        StepResult::Progressed => {
                            trace.current = Some(sit);
                            return Ok(BacktrackResult::Restored);
                        }
                        _ => continue,
                    }
                }
                Pending::Methods { next_rank, open } => {
                    let (task, depth) = cp
                        .snapshot
                        .tasks
                        .head()
                        .map(|(t, d)| (t.clone(), d))
                        .expect("method choice has a head");
                    if open.is_empty() {
                        let from = *next_rank;
                        match self.next_method(hooks, &mut trace.stats, &mut cp.snapshot, &task, from)? {
                            Some((rank, alts)) => {
                                *next_rank = rank;
                                *open = alts;
                            }
                            None => continue,
                        }
                    }
                    let Pending::Methods { next_rank, open } = &mut cp.pending else {
                        unreachable!()
                    };
                    let (method, body) = open.pop_front().expect("refilled above");
                    let more = !open.is_empty() || *next_rank < self.domain.methods_for(&task.name).len();
                    let mut sit = cp.snapshot.clone();
                    if more {
                        trace.stack.push(cp);
                    }
                    trace.stats.backtracks += 1;
                    expand(&mut sit, &task, depth, method, &body);
                    trace.current = Some(sit);
                    return Ok(BacktrackResult::Restored);
                }
            }
        }
        Ok(BacktrackResult::Exhausted)
    }

    /// Satisfying bindings of a primitive's precondition, one per distinct
    /// ground effect set, in deterministic order.
    pub fn operator_bindings<H: Hooks>(
        &self,
        hooks: &mut H,
        sit: &mut Situation<H::World, H::Note>,
        op: &Operator,
        task: &TaskInst,
    ) -> Result<Vec<Binding>, PlanError> {
        let initial = op.bind_params(&task.args)?;
        let mut eval = HookEval {
            hooks,
            world: &mut sit.world,
        };
        let all = holds(&op.pre, &sit.state, &self.universe, &initial, &mut eval)?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for b in all {
            let eff = static_effects(op, &b)?;
            if seen.insert((eff.adds, eff.deletes)) {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// Applies a primitive at the head of `sit` under `binding`.
    #[allow(clippy::too_many_arguments)]
    pub fn commit_head<H: Hooks>(
        &self,
        hooks: &mut H,
        stack: &mut Vec<ChoicePoint<H::World, H::Note>>,
        sit: &mut Situation<H::World, H::Note>,
        stats: &mut PlanStats,
        op: &Operator,
        task: &TaskInst,
        binding: Binding,
    ) -> Result<StepResult, PlanError> {
        let action = GroundAction {
            op: op.name.clone(),
            args: task.args.clone(),
            binding,
        };
        match hooks.commit(&mut sit.world, op, &action, &sit.state)? {
            Commit::Failed => Ok(StepResult::NeedsBacktrack(HeadFailure {
                task: task.clone(),
                kind: FailureKind::CommitFailed,
                geometric: op.is_gs(),
            })),
            Commit::Applied { geo, note, marker } => {
                let next = apply(&sit.state, op, &action.binding, &geo)?;
                let tasks_before = sit.tasks.clone();
                let state_before = std::mem::replace(&mut sit.state, next);
                sit.tasks = tasks_before.tail();
                sit.plan.push(PlanStep {
                    action,
                    geo,
                    note,
                    tasks_before,
                    state_before,
                    chosen_before: sit.chosen.len(),
                });
                stats.actions += 1;
                if marker {
                    stack.push(ChoicePoint::marker(sit.clone()));
                }
                Ok(StepResult::Progressed)
            }
        }
    }

    /// First method of rank ≥ `from` with an applicable ground alternative.
    /// Returns the rank after it together with its alternatives.
    #[allow(clippy::type_complexity)]
    fn next_method<H: Hooks>(
        &self,
        hooks: &mut H,
        stats: &mut PlanStats,
        sit: &mut Situation<H::World, H::Note>,
        task: &TaskInst,
        from: usize,
    ) -> Result<Option<(usize, VecDeque<(Sym, Vec<TaskInst>)>)>, PlanError> {
        let methods = self.domain.methods_for(&task.name);
        for (rank, m) in methods.iter().enumerate().skip(from) {
            let Some(initial) = m.unify_head(&task.args) else {
                continue;
            };
            stats.methods_tried += 1;
            let mut eval = HookEval {
                hooks: &mut *hooks,
                world: &mut sit.world,
            };
            let bindings = holds(&m.pre, &sit.state, &self.universe, &initial, &mut eval)?;
            let mut seen = BTreeSet::new();
            let mut alts = VecDeque::new();
            for b in bindings {
                let body = m.body.iter().map(|t| t.ground(&b)).collect::<Result<Vec<_>, _>>()?;
                if seen.insert(body.clone()) {
                    alts.push_back((m.name.clone(), body));
                }
            }
            if !alts.is_empty() {
                return Ok(Some((rank + 1, alts)));
            }
        }
        Ok(None)
    }
}

fn expand<W, N>(sit: &mut Situation<W, N>, task: &TaskInst, depth: usize, method: Sym, body: &[TaskInst]) {
    sit.tasks = sit.tasks.tail().prepend(body, depth + 1);
    sit.chosen.push((method, task.clone()));
}
