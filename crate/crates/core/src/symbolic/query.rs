//! Precondition evaluation against a closed-world state.

use std::collections::BTreeMap;

use super::domain::Universe;
use super::formula::{Fact, Formula, Literal, LiteralKind};
use super::state::State;
use super::term::{Binding, Expr, Sym, Term};
use super::SymbolicError;

/// Why an evaluable literal could not be decided.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    /// The underlying solver gave up; the literal counts as false.
    #[error("evaluation timed out")]
    Timeout,
    #[error("evaluator configuration: {0}")]
    Config(String),
}

/// Decides ground evaluable literals such as `(? pick b1)`.
pub trait Evaluator {
    fn evaluate(&mut self, atom: &Fact) -> Result<bool, EvalError>;
}

impl<F> Evaluator for F
where
    F: FnMut(&Fact) -> Result<bool, EvalError>,
{
    fn evaluate(&mut self, atom: &Fact) -> Result<bool, EvalError> {
        self(atom)
    }
}

/// Evaluator for formulas that must not contain evaluable literals.
pub struct NoEvaluator;

impl Evaluator for NoEvaluator {
    fn evaluate(&mut self, atom: &Fact) -> Result<bool, EvalError> {
        Err(EvalError::Config(format!("no evaluator bound for {atom}")))
    }
}

/// All bindings extending `initial` under which `formula` holds, sorted and
/// deduplicated. Each distinct ground evaluable literal reaches the evaluator
/// at most once per call.
pub fn holds(
    formula: &Formula,
    state: &State,
    universe: &Universe,
    initial: &Binding,
    evaluator: &mut dyn Evaluator,
) -> Result<Vec<Binding>, SymbolicError> {
    let mut q = Query {
        state,
        universe,
        evaluator,
        memo: BTreeMap::new(),
    };
    let mut out = Vec::new();
    q.solve(&[formula], initial.clone(), &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Convenience: does the formula hold under some extension of `initial`?
pub fn holds_any(
    formula: &Formula,
    state: &State,
    universe: &Universe,
    initial: &Binding,
    evaluator: &mut dyn Evaluator,
) -> Result<bool, SymbolicError> {
    Ok(!holds(formula, state, universe, initial, evaluator)?.is_empty())
}

struct Query<'a> {
    state: &'a State,
    universe: &'a Universe,
    evaluator: &'a mut dyn Evaluator,
    memo: BTreeMap<Fact, bool>,
}

impl Query<'_> {
    fn solve(&mut self, pending: &[&Formula], binding: Binding, out: &mut Vec<Binding>) -> Result<(), SymbolicError> {
        if pending.is_empty() {
            out.push(binding);
            return Ok(());
        }
        let idx = pending.iter().position(|f| ready(f, &binding)).ok_or_else(|| {
            let vars: Vec<String> = pending
                .iter()
                .flat_map(|f| f.free_vars())
                .filter(|v| !binding.contains_key(v))
                .map(|v| format!("?{v}"))
                .collect();
            SymbolicError::Unbound(vars.join(", "))
        })?;
        let current = pending[idx];
        let rest: Vec<&Formula> = pending
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, f)| *f)
            .collect();

        match current {
            Formula::True => self.solve(&rest, binding, out),
            Formula::And(parts) => {
                let mut next: Vec<&Formula> = parts.iter().collect();
                next.extend(rest);
                self.solve(&next, binding, out)
            }
            Formula::Lit(lit) => self.solve_literal(lit, &rest, binding, out),
            Formula::Not(inner) => {
                if !self.exists(inner, &binding)? {
                    self.solve(&rest, binding, out)?;
                }
                Ok(())
            }
            Formula::Forall { var, ty, body } => {
                let domain: Vec<Sym> = self.universe.of_type(ty).to_vec();
                for c in domain {
                    let mut b = binding.clone();
                    b.insert(var.clone(), c);
                    if !self.exists(body, &b)? {
                        return Ok(());
                    }
                }
                self.solve(&rest, binding, out)
            }
            Formula::Compare(op, a, b) => {
                if op.eval(a.ground_int(&binding)?, b.ground_int(&binding)?) {
                    self.solve(&rest, binding, out)?;
                }
                Ok(())
            }
        }
    }

    fn exists(&mut self, f: &Formula, binding: &Binding) -> Result<bool, SymbolicError> {
        let mut out = Vec::new();
        self.solve(&[f], binding.clone(), &mut out)?;
        Ok(!out.is_empty())
    }

    fn solve_literal(
        &mut self,
        lit: &Literal,
        rest: &[&Formula],
        binding: Binding,
        out: &mut Vec<Binding>,
    ) -> Result<(), SymbolicError> {
        if lit.kind == LiteralKind::Evaluable {
            let fact = lit.atom.ground(&binding)?;
            let truth = match self.memo.get(&fact) {
                Some(&t) => t,
                None => {
                    let t = match self.evaluator.evaluate(&fact) {
                        Ok(t) => t,
                        Err(EvalError::Timeout) => false,
                        Err(EvalError::Config(msg)) => return Err(SymbolicError::Evaluator(msg)),
                    };
                    self.memo.insert(fact, t);
                    t
                }
            };
            if truth == lit.positive {
                self.solve(rest, binding, out)?;
            }
            return Ok(());
        }

        if !self.universe.is_known(&lit.atom.pred) {
            return Err(SymbolicError::UnknownPredicate(lit.atom.pred.to_string()));
        }

        if !lit.positive {
            let fact = lit.atom.ground(&binding)?;
            if !self.state.contains(&fact) {
                self.solve(rest, binding, out)?;
            }
            return Ok(());
        }

        let state = self.state;
        for fact in state.facts_of(&lit.atom.pred) {
            if fact.args.len() != lit.atom.args.len() {
                continue;
            }
            if let Some(b) = unify(&lit.atom.args, &fact.args, &binding)? {
                self.solve(rest, b, out)?;
            }
        }
        Ok(())
    }
}

fn unify(pattern: &[Expr], values: &[Sym], binding: &Binding) -> Result<Option<Binding>, SymbolicError> {
    let mut b = binding.clone();
    for (p, v) in pattern.iter().zip(values) {
        match p {
            Expr::Term(Term::Var(name)) => match b.get(name) {
                Some(bound) if bound != v => return Ok(None),
                Some(_) => {}
                None => {
                    b.insert(name.clone(), v.clone());
                }
            },
            other => {
                if &other.ground(&b)? != v {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(b))
}

fn ready(f: &Formula, binding: &Binding) -> bool {
    match f {
        Formula::True | Formula::And(_) => true,
        Formula::Lit(l) if l.positive && l.kind != LiteralKind::Evaluable => l
            .atom
            .args
            .iter()
            .all(|a| matches!(a, Expr::Term(_)) || a.is_ground_under(binding)),
        _ => f.free_vars().iter().all(|v| binding.contains_key(v)),
    }
}
