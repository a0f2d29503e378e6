use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SymbolicError;

/// An interned-by-value symbol. Ordering is lexicographic over the text,
/// which is the deterministic binding order used throughout the planner.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(text: &str) -> Self {
        Sym(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn from_int(value: i64) -> Self {
        Sym::new(&value.to_string())
    }

    /// Integer value of a numeric constant, if it is one.
    pub fn as_int(&self) -> Option<i64> {
        self.0.parse().ok()
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sym {
    fn from(text: &str) -> Self {
        Sym::new(text)
    }
}

/// A constant or a `?`-prefixed variable. Variables are stored without the sigil.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Sym),
    Var(Sym),
}

impl Term {
    pub fn parse(token: &str) -> Self {
        match token.strip_prefix('?') {
            Some(name) => Term::Var(Sym::new(name)),
            None => Term::Const(Sym::new(token)),
        }
    }

    pub fn var(name: &str) -> Self {
        Term::Var(Sym::new(name))
    }

    pub fn constant(name: &str) -> Self {
        Term::Const(Sym::new(name))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(s) => write!(f, "{s}"),
            Term::Var(s) => write!(f, "?{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "+" => Some(ArithOp::Add),
            "-" => Some(ArithOp::Sub),
            "*" => Some(ArithOp::Mul),
            _ => None,
        }
    }
}

/// Argument expression: a term, or integer arithmetic over terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Term(Term),
    Arith(ArithOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Term(Term::var(name))
    }

    pub fn constant(name: &str) -> Self {
        Expr::Term(Term::constant(name))
    }

    pub fn as_var(&self) -> Option<&Sym> {
        match self {
            Expr::Term(Term::Var(v)) => Some(v),
            _ => None,
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Sym>) {
        match self {
            Expr::Term(Term::Var(v)) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Term(Term::Const(_)) => {}
            Expr::Arith(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates under `binding`. Plain terms ground to their constant; arithmetic
    /// requires integer operands.
    pub fn ground(&self, binding: &Binding) -> Result<Sym, SymbolicError> {
        match self {
            Expr::Term(Term::Const(c)) => Ok(c.clone()),
            Expr::Term(Term::Var(v)) => binding
                .get(v)
                .cloned()
                .ok_or_else(|| SymbolicError::Grounding(format!("unbound variable ?{v}"))),
            Expr::Arith(op, a, b) => {
                let lhs = a.ground_int(binding)?;
                let rhs = b.ground_int(binding)?;
                let value = match op {
                    ArithOp::Add => lhs.checked_add(rhs),
                    ArithOp::Sub => lhs.checked_sub(rhs),
                    ArithOp::Mul => lhs.checked_mul(rhs),
                }
                .ok_or_else(|| SymbolicError::Grounding("integer overflow".into()))?;
                Ok(Sym::from_int(value))
            }
        }
    }

    pub fn ground_int(&self, binding: &Binding) -> Result<i64, SymbolicError> {
        let sym = self.ground(binding)?;
        sym.as_int()
            .ok_or_else(|| SymbolicError::Grounding(format!("`{sym}` is not an integer")))
    }

    pub fn is_ground_under(&self, binding: &Binding) -> bool {
        match self {
            Expr::Term(Term::Const(_)) => true,
            Expr::Term(Term::Var(v)) => binding.contains_key(v),
            Expr::Arith(_, a, b) => a.is_ground_under(binding) && b.is_ground_under(binding),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => write!(f, "{t}"),
            Expr::Arith(op, a, b) => write!(f, "({} {a} {b})", op.symbol()),
        }
    }
}

/// Variable assignment. A `BTreeMap` so that comparing two bindings is the
/// lexicographic order over values keyed by variable name.
pub type Binding = std::collections::BTreeMap<Sym, Sym>;
