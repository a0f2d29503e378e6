//! Writes domains and problems back in the `.htn` syntax accepted by the parser.

use std::fmt::Write as _;

use super::domain::{HtnDomain, HtnProblem, Method, Operator};
use super::formula::Atom;

pub fn print_operator(op: &Operator) -> String {
    let mut s = format!("(operator {} (", op.name);
    for (i, p) in op.params.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "?{p}");
    }
    let _ = write!(
        s,
        ")\n  :pre {}\n  :add {}\n  :del {}",
        op.pre,
        atoms(&op.add),
        atoms(&op.del)
    );
    if let Some(g) = &op.gtp {
        let _ = write!(s, "\n  :gtp {g}");
    }
    s.push(')');
    s
}

pub fn print_method(m: &Method) -> String {
    let mut s = format!("(method {} ({}", m.name, m.task);
    for p in &m.params {
        let _ = write!(s, " {p}");
    }
    let _ = write!(s, ")\n  :pre {}\n  :body (", m.pre);
    for (i, t) in m.body.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{t}");
    }
    s.push_str("))");
    s
}

/// Operators first, then methods in declaration order, so ranks survive a
/// round trip.
pub fn print_domain(d: &HtnDomain) -> String {
    let mut s = String::new();
    for op in d.operators() {
        s.push_str(&print_operator(op));
        s.push_str("\n\n");
    }
    for m in d.methods() {
        s.push_str(&print_method(m));
        s.push_str("\n\n");
    }
    s
}

pub fn print_problem(p: &HtnProblem) -> String {
    let mut s = String::from("(problem");
    if let Some(n) = &p.name {
        let _ = write!(s, "\n  :name {n}");
    }
    s.push_str("\n  :objects (");
    for (i, (name, ty)) in p.objects.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "({name} {ty})");
    }
    s.push_str(")\n  :init (");
    for (i, f) in p.init.facts().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{f}");
    }
    s.push_str(")\n  :tasks (");
    for (i, t) in p.tasks.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "({}", t.name);
        for a in &t.args {
            let _ = write!(s, " {a}");
        }
        s.push(')');
    }
    s.push_str("))\n");
    s
}

fn atoms(list: &[Atom]) -> String {
    let parts: Vec<String> = list.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(" "))
}
