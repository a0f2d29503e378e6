use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::formula::{is_shared_predicate, Atom, Formula, LiteralKind};
use super::state::State;
use super::term::{Binding, Expr, Sym, Term};
use super::SymbolicError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub name: Sym,
    pub params: Vec<Sym>,
    pub pre: Formula,
    pub add: Vec<Atom>,
    pub del: Vec<Atom>,
    /// Linked geometric task; makes this a GS operator.
    pub gtp: Option<Sym>,
}

impl Operator {
    pub fn is_gs(&self) -> bool {
        self.gtp.is_some()
    }

    /// Binding of the parameters to the ground arguments of a task instance.
    pub fn bind_params(&self, args: &[Sym]) -> Result<Binding, SymbolicError> {
        if args.len() != self.params.len() {
            return Err(SymbolicError::Arity {
                name: self.name.to_string(),
                expected: self.params.len(),
                got: args.len(),
            });
        }
        Ok(self.params.iter().cloned().zip(args.iter().cloned()).collect())
    }

    /// The evaluable literal naming the linked geometric task, if any.
    pub fn gtp_atom(&self) -> Option<&Atom> {
        let task = self.gtp.as_ref()?;
        self.pre
            .evaluable_literals()
            .into_iter()
            .find(|l| &l.atom.pred == task)
            .map(|l| &l.atom)
    }
}

/// A task occurrence in a method body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskTemplate {
    pub name: Sym,
    pub args: Vec<Expr>,
}

impl TaskTemplate {
    pub fn ground(&self, binding: &Binding) -> Result<TaskInst, SymbolicError> {
        Ok(TaskInst {
            name: self.name.clone(),
            args: self.args.iter().map(|a| a.ground(binding)).collect::<Result<_, _>>()?,
        })
    }
}

impl fmt::Display for TaskTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Method {
    pub name: Sym,
    pub task: Sym,
    pub params: Vec<Term>,
    pub pre: Formula,
    pub body: Vec<TaskTemplate>,
    /// Position among the methods for the same task, in declaration order.
    pub rank: usize,
}

impl Method {
    /// Unifies the method head with a ground task instance.
    pub fn unify_head(&self, args: &[Sym]) -> Option<Binding> {
        if args.len() != self.params.len() {
            return None;
        }
        let mut binding = Binding::new();
        for (p, a) in self.params.iter().zip(args) {
            match p {
                Term::Const(c) if c == a => {}
                Term::Const(_) => return None,
                Term::Var(v) => match binding.get(v) {
                    Some(existing) if existing != a => return None,
                    Some(_) => {}
                    None => {
                        binding.insert(v.clone(), a.clone());
                    }
                },
            }
        }
        Some(binding)
    }
}

/// A ground task.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TaskInst {
    pub name: Sym,
    pub args: Vec<Sym>,
}

impl TaskInst {
    pub fn new(name: &str, args: &[&str]) -> Self {
        TaskInst {
            name: Sym::new(name),
            args: args.iter().map(|a| Sym::new(a)).collect(),
        }
    }
}

impl fmt::Display for TaskInst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtnDomain {
    operators: Vec<Operator>,
    methods: Vec<Method>,
    op_index: BTreeMap<Sym, usize>,
    methods_by_task: BTreeMap<Sym, Vec<usize>>,
}

impl HtnDomain {
    /// Builds and validates a domain. Method ranks are reassigned from
    /// declaration order.
    pub fn new(operators: Vec<Operator>, mut methods: Vec<Method>) -> Result<Self, SymbolicError> {
        let mut op_index = BTreeMap::new();
        for (i, op) in operators.iter().enumerate() {
            if op_index.insert(op.name.clone(), i).is_some() {
                return Err(SymbolicError::Duplicate(op.name.to_string()));
            }
        }
        let mut names = BTreeSet::new();
        let mut methods_by_task: BTreeMap<Sym, Vec<usize>> = BTreeMap::new();
        for (i, m) in methods.iter_mut().enumerate() {
            if !names.insert(m.name.clone()) {
                return Err(SymbolicError::Duplicate(m.name.to_string()));
            }
            if op_index.contains_key(&m.task) {
                return Err(SymbolicError::Lint(format!(
                    "method {} refines primitive task {}",
                    m.name, m.task
                )));
            }
            let slot = methods_by_task.entry(m.task.clone()).or_default();
            m.rank = slot.len();
            slot.push(i);
        }
        let domain = HtnDomain {
            operators,
            methods,
            op_index,
            methods_by_task,
        };
        domain.validate()?;
        Ok(domain)
    }

    fn validate(&self) -> Result<(), SymbolicError> {
        for m in &self.methods {
            for t in &m.body {
                self.check_task_name(&t.name)?;
            }
        }
        for op in &self.operators {
            for a in op.add.iter().chain(&op.del) {
                if is_shared_predicate(a.pred.as_str()) {
                    return Err(SymbolicError::Lint(format!(
                        "operator {} asserts shared predicate {} statically",
                        op.name, a.pred
                    )));
                }
            }
            let evaluable = op.pre.evaluable_literals();
            match &op.gtp {
                Some(task) => {
                    if !evaluable.iter().any(|l| &l.atom.pred == task) {
                        return Err(SymbolicError::Lint(format!(
                            "GS operator {} links {} but has no matching evaluable literal",
                            op.name, task
                        )));
                    }
                }
                None => {
                    if let Some(l) = evaluable.first() {
                        return Err(SymbolicError::Lint(format!(
                            "operator {} uses evaluable literal {} without :gtp",
                            op.name, l.atom.pred
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that a task name is either an operator or has a method.
    pub fn check_task_name(&self, name: &Sym) -> Result<(), SymbolicError> {
        if self.op_index.contains_key(name) || self.methods_by_task.contains_key(name) {
            Ok(())
        } else {
            Err(SymbolicError::UndefinedTask(name.to_string()))
        }
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn methods(&self) -> &[Method] {
        &self.methods
    }

    pub fn operator(&self, name: &Sym) -> Option<&Operator> {
        self.op_index.get(name).map(|&i| &self.operators[i])
    }

    pub fn method(&self, name: &str) -> Option<&Method> {
        self.methods.iter().find(|m| m.name.as_str() == name)
    }

    pub fn is_primitive(&self, name: &Sym) -> bool {
        self.op_index.contains_key(name)
    }

    /// Methods for an abstract task in rank order.
    pub fn methods_for(&self, task: &Sym) -> Vec<&Method> {
        self.methods_by_task
            .get(task)
            .map(|ix| ix.iter().map(|&i| &self.methods[i]).collect())
            .unwrap_or_default()
    }

    /// Every predicate mentioned anywhere in the domain.
    pub fn mentioned_predicates(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        let mut visit = |f: &Formula| {
            f.visit_literals(&mut |l| {
                if l.kind != LiteralKind::Evaluable {
                    out.insert(l.atom.pred.clone());
                }
            })
        };
        for op in &self.operators {
            visit(&op.pre);
        }
        for m in &self.methods {
            visit(&m.pre);
        }
        for op in &self.operators {
            for a in op.add.iter().chain(&op.del) {
                out.insert(a.pred.clone());
            }
        }
        out
    }

    /// Names of all evaluable predicates used by the domain.
    pub fn evaluable_predicates(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        for f in self
            .operators
            .iter()
            .map(|o| &o.pre)
            .chain(self.methods.iter().map(|m| &m.pre))
        {
            for l in f.evaluable_literals() {
                out.insert(l.atom.pred.clone());
            }
        }
        out
    }
}

/// Typed constants and known predicates of one problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    objects: BTreeMap<Sym, Sym>,
    by_type: BTreeMap<Sym, Vec<Sym>>,
    known: BTreeSet<Sym>,
}

impl Universe {
    pub fn new(objects: &[(Sym, Sym)], known: BTreeSet<Sym>) -> Self {
        let mut by_type: BTreeMap<Sym, Vec<Sym>> = BTreeMap::new();
        let mut map = BTreeMap::new();
        for (name, ty) in objects {
            map.insert(name.clone(), ty.clone());
            by_type.entry(ty.clone()).or_default().push(name.clone());
        }
        for v in by_type.values_mut() {
            v.sort();
            v.dedup();
        }
        let mut known = known;
        for p in super::formula::SHARED_PREDICATES {
            known.insert(Sym::new(p));
        }
        Universe {
            objects: map,
            by_type,
            known,
        }
    }

    pub fn of_type(&self, ty: &Sym) -> &[Sym] {
        self.by_type.get(ty).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn type_of(&self, name: &Sym) -> Option<&Sym> {
        self.objects.get(name)
    }

    pub fn is_known(&self, pred: &Sym) -> bool {
        self.known.contains(pred)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&Sym, &Sym)> {
        self.objects.iter()
    }
}

#[derive(Clone, Debug)]
pub struct HtnProblem {
    pub name: Option<Sym>,
    pub objects: Vec<(Sym, Sym)>,
    pub init: State,
    pub tasks: Vec<TaskInst>,
    pub domain: Arc<HtnDomain>,
}

impl HtnProblem {
    pub fn new(
        domain: Arc<HtnDomain>,
        objects: Vec<(Sym, Sym)>,
        init: State,
        tasks: Vec<TaskInst>,
    ) -> Result<Self, SymbolicError> {
        for t in &tasks {
            domain.check_task_name(&t.name)?;
        }
        if let Some(f) = init.shared().iter().next() {
            return Err(SymbolicError::Lint(format!(
                "shared literal {f} asserted in the initial state"
            )));
        }
        Ok(HtnProblem {
            name: None,
            objects,
            init,
            tasks,
            domain,
        })
    }

    pub fn universe(&self) -> Universe {
        let mut known = self.domain.mentioned_predicates();
        for f in self.init.facts() {
            known.insert(f.pred.clone());
        }
        Universe::new(&self.objects, known)
    }

    /// Same problem with another task list.
    pub fn with_tasks(&self, tasks: Vec<TaskInst>) -> Result<Self, SymbolicError> {
        let mut p = HtnProblem::new(self.domain.clone(), self.objects.clone(), self.init.clone(), tasks)?;
        p.name = self.name.clone();
        Ok(p)
    }
}

/// A ground primitive action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroundAction {
    pub op: Sym,
    pub args: Vec<Sym>,
    /// Binding of all precondition variables used to ground the effects.
    #[serde(skip)]
    pub binding: Binding,
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.op)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
