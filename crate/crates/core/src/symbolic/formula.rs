use std::fmt;

use serde::{Deserialize, Serialize};

use super::term::{Binding, Expr, Sym, Term};
use super::SymbolicError;

/// Predicates whose truth is derived from the geometric world.
pub const SHARED_PREDICATES: [&str; 5] = ["visible", "reachable", "on", "inside", "coveredBy"];

pub fn is_shared_predicate(name: &str) -> bool {
    SHARED_PREDICATES.contains(&name)
}

/// A ground atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fact {
    pub pred: Sym,
    pub args: Vec<Sym>,
}

impl Fact {
    pub fn new(pred: &str, args: &[&str]) -> Self {
        Fact {
            pred: Sym::new(pred),
            args: args.iter().map(|a| Sym::new(a)).collect(),
        }
    }

    pub fn is_shared(&self) -> bool {
        is_shared_predicate(self.pred.as_str())
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.pred)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

/// A possibly non-ground atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Expr>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Expr>) -> Self {
        Atom {
            pred: Sym::new(pred),
            args,
        }
    }

    /// Shorthand for atoms written as `pred ?x b1 ...`.
    pub fn parse_simple(pred: &str, args: &[&str]) -> Self {
        Atom {
            pred: Sym::new(pred),
            args: args.iter().map(|a| Expr::Term(Term::parse(a))).collect(),
        }
    }

    pub fn ground(&self, binding: &Binding) -> Result<Fact, SymbolicError> {
        let args = self
            .args
            .iter()
            .map(|a| a.ground(binding))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Fact {
            pred: self.pred.clone(),
            args,
        })
    }

    pub fn collect_vars(&self, out: &mut Vec<Sym>) {
        for a in &self.args {
            a.collect_vars(out);
        }
    }

    pub fn is_ground_under(&self, binding: &Binding) -> bool {
        self.args.iter().all(|a| a.is_ground_under(binding))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.pred)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralKind {
    Ordinary,
    /// `(? task args...)`: true iff the linked geometric task has a solution.
    Evaluable,
    Shared,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
    pub kind: LiteralKind,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        let kind = if is_shared_predicate(atom.pred.as_str()) {
            LiteralKind::Shared
        } else {
            LiteralKind::Ordinary
        };
        Literal {
            atom,
            positive: true,
            kind,
        }
    }

    pub fn negative(atom: Atom) -> Self {
        Literal {
            positive: false,
            ..Literal::positive(atom)
        }
    }

    pub fn evaluable(atom: Atom) -> Self {
        Literal {
            atom,
            positive: true,
            kind: LiteralKind::Evaluable,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.kind {
            LiteralKind::Evaluable => {
                let mut s = format!("(? {}", self.atom.pred);
                for a in &self.atom.args {
                    s.push_str(&format!(" {a}"));
                }
                s.push(')');
                s
            }
            _ => self.atom.to_string(),
        };
        if self.positive {
            write!(f, "{body}")
        } else {
            write!(f, "(not {body})")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "<" => CmpOp::Lt,
            "<=" => CmpOp::Le,
            ">" => CmpOp::Gt,
            ">=" => CmpOp::Ge,
            "=" => CmpOp::Eq,
            "!=" => CmpOp::Ne,
            _ => return None,
        })
    }

    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Ge => lhs >= rhs,
            CmpOp::Eq => lhs == rhs,
            CmpOp::Ne => lhs != rhs,
        }
    }
}

/// Precondition language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    Lit(Literal),
    And(Vec<Formula>),
    Not(Box<Formula>),
    /// Ranges over the problem's constants declared with type `ty`.
    Forall {
        var: Sym,
        ty: Sym,
        body: Box<Formula>,
    },
    Compare(CmpOp, Expr, Expr),
}

impl Formula {
    pub fn and(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Sym>, out: &mut Vec<Sym>) {
        let mut push = |vars: Vec<Sym>, bound: &Vec<Sym>| {
            for v in vars {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::True => {}
            Formula::Lit(l) => {
                let mut vs = Vec::new();
                l.atom.collect_vars(&mut vs);
                push(vs, bound);
            }
            Formula::And(parts) => {
                for p in parts {
                    p.collect_free(bound, out);
                }
            }
            Formula::Not(inner) => inner.collect_free(bound, out),
            Formula::Forall { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Compare(_, a, b) => {
                let mut vs = Vec::new();
                a.collect_vars(&mut vs);
                b.collect_vars(&mut vs);
                push(vs, bound);
            }
        }
    }

    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.visit_literals(&mut |l| out.push(l));
        out
    }

    pub fn visit_literals<'a>(&'a self, f: &mut dyn FnMut(&'a Literal)) {
        match self {
            Formula::Lit(l) => f(l),
            Formula::And(parts) => parts.iter().for_each(|p| p.visit_literals(f)),
            Formula::Not(inner) => inner.visit_literals(f),
            Formula::Forall { body, .. } => body.visit_literals(f),
            Formula::True | Formula::Compare(..) => {}
        }
    }

    pub fn evaluable_literals(&self) -> Vec<&Literal> {
        self.literals()
            .into_iter()
            .filter(|l| l.kind == LiteralKind::Evaluable)
            .collect()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "()"),
            Formula::Lit(l) => write!(f, "{l}"),
            Formula::And(parts) => {
                write!(f, "(and")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::Forall { var, ty, body } => write!(f, "(forall (?{var} {ty}) {body})"),
            Formula::Compare(op, a, b) => write!(f, "({} {a} {b})", op.symbol()),
        }
    }
}
