//! Symbolic layer: terms, formulas, states, HTN domains and their text format.

pub mod apply;
pub mod domain;
pub mod formula;
pub mod parse;
pub mod print;
pub mod query;
pub mod sexpr;
pub mod state;
pub mod term;

pub use apply::{apply, static_effects, GeoEffects};
pub use domain::{GroundAction, HtnDomain, HtnProblem, Method, Operator, TaskInst, TaskTemplate, Universe};
pub use formula::{is_shared_predicate, Atom, CmpOp, Fact, Formula, Literal, LiteralKind, SHARED_PREDICATES};
pub use parse::{parse_domain, parse_problem};
pub use print::{print_domain, print_problem};
pub use query::{holds, holds_any, EvalError, Evaluator, NoEvaluator};
pub use state::State;
pub use term::{ArithOp, Binding, Expr, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("undefined task `{0}`")]
    UndefinedTask(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("cannot ground: {0}")]
    Grounding(String),
    #[error("unbound variables in negation or comparison: {0}")]
    Unbound(String),
    #[error("domain lint: {0}")]
    Lint(String),
    #[error("evaluator error: {0}")]
    Evaluator(String),
    #[error("{name} expects {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
}
