//! Reader for the `.htn` domain and problem language.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::domain::{HtnDomain, HtnProblem, Method, Operator, TaskInst, TaskTemplate};
use super::formula::{Atom, CmpOp, Fact, Formula, Literal, LiteralKind};
use super::sexpr::{read_all, SExpr};
use super::state::State;
use super::term::{ArithOp, Expr, Sym, Term};
use super::SymbolicError;

pub fn parse_domain(text: &str) -> Result<HtnDomain, SymbolicError> {
    let forms = read_all(text)?;
    let mut operators = Vec::new();
    let mut methods = Vec::new();
    let mut task_refs: Vec<(Sym, SExpr)> = Vec::new();
    let mut seen = BTreeSet::new();
    for form in &forms {
        let items = form.as_list().ok_or_else(|| form.err("expected a top-level form"))?;
        let head = items
            .first()
            .and_then(SExpr::as_atom)
            .ok_or_else(|| form.err("expected `operator` or `method`"))?;
        match head {
            "operator" => {
                let op = parse_operator(form, items)?;
                if !seen.insert(op.name.clone()) {
                    return Err(form.err(format!("duplicate name `{}`", op.name)));
                }
                operators.push(op);
            }
            "method" => {
                let (m, refs) = parse_method(form, items)?;
                if !seen.insert(m.name.clone()) {
                    return Err(form.err(format!("duplicate name `{}`", m.name)));
                }
                task_refs.extend(refs);
                methods.push(m);
            }
            other => return Err(items[0].err(format!("unknown form `{other}`"))),
        }
    }
    let defined: BTreeSet<Sym> = operators
        .iter()
        .map(|o| o.name.clone())
        .chain(methods.iter().map(|m| m.task.clone()))
        .collect();
    for (name, at) in &task_refs {
        if !defined.contains(name) {
            return Err(at.err(format!("undefined task `{name}`")));
        }
    }
    HtnDomain::new(operators, methods)
}

pub fn parse_problem(text: &str, domain: Arc<HtnDomain>) -> Result<HtnProblem, SymbolicError> {
    let forms = read_all(text)?;
    let form = match forms.as_slice() {
        [one] => one,
        [] => {
            return Err(SymbolicError::Parse {
                line: 1,
                col: 1,
                msg: "empty problem".into(),
            })
        }
        [_, second, ..] => return Err(second.err("expected a single `problem` form")),
    };
    let items = form.as_list().ok_or_else(|| form.err("expected `(problem ...)`"))?;
    if items.first().and_then(SExpr::as_atom) != Some("problem") {
        return Err(form.err("expected `(problem ...)`"));
    }
    let props = keyword_props(form, &items[1..], &[":name", ":objects", ":init", ":tasks"])?;

    let name = match props.get(":name") {
        Some(s) => Some(Sym::new(s.as_atom().ok_or_else(|| s.err("expected a name"))?)),
        None => None,
    };
    let mut objects = Vec::new();
    if let Some(objs) = props.get(":objects") {
        for entry in list_of(objs)? {
            match entry.as_list() {
                Some([n, t]) => objects.push((atom_sym(n)?, atom_sym(t)?)),
                _ => return Err(entry.err("expected `(name type)`")),
            }
        }
    }
    let mut init = State::new();
    if let Some(facts) = props.get(":init") {
        for f in list_of(facts)? {
            let fact = parse_fact(f)?;
            if fact.is_shared() {
                return Err(f.err(format!("shared predicate `{}` cannot be asserted", fact.pred)));
            }
            init.insert(fact);
        }
    }
    let mut tasks = Vec::new();
    if let Some(ts) = props.get(":tasks") {
        for t in list_of(ts)? {
            let fact = parse_fact(t)?;
            if domain.check_task_name(&fact.pred).is_err() {
                return Err(t.err(format!("undefined task `{}`", fact.pred)));
            }
            tasks.push(TaskInst {
                name: fact.pred,
                args: fact.args,
            });
        }
    }
    let mut problem = HtnProblem::new(domain, objects, init, tasks)?;
    problem.name = name;
    Ok(problem)
}

fn parse_operator(form: &SExpr, items: &[SExpr]) -> Result<Operator, SymbolicError> {
    if items.len() < 3 {
        return Err(form.err("expected `(operator NAME (PARAMS) ...)`"));
    }
    let name = atom_sym(&items[1])?;
    let mut params = Vec::new();
    for p in list_of(&items[2])? {
        match parse_term(p)? {
            Term::Var(v) => params.push(v),
            Term::Const(_) => return Err(p.err("operator parameters must be variables")),
        }
    }
    let props = keyword_props(form, &items[3..], &[":pre", ":add", ":del", ":gtp"])?;
    let pre = match props.get(":pre") {
        Some(p) => parse_formula(p)?,
        None => Formula::True,
    };
    let atoms = |key: &str| -> Result<Vec<Atom>, SymbolicError> {
        match props.get(key) {
            Some(l) => list_of(l)?.iter().map(parse_atom).collect(),
            None => Ok(Vec::new()),
        }
    };
    let add = atoms(":add")?;
    let del = atoms(":del")?;
    let gtp = match props.get(":gtp") {
        Some(g) => Some(atom_sym(g)?),
        None => None,
    };
    Ok(Operator {
        name,
        params,
        pre,
        add,
        del,
        gtp,
    })
}

fn parse_method(form: &SExpr, items: &[SExpr]) -> Result<(Method, Vec<(Sym, SExpr)>), SymbolicError> {
    if items.len() < 3 {
        return Err(form.err("expected `(method NAME (TASK ARGS) ...)`"));
    }
    let name = atom_sym(&items[1])?;
    let head = items[2]
        .as_list()
        .ok_or_else(|| items[2].err("expected `(TASK ARGS)`"))?;
    let task = atom_sym(head.first().ok_or_else(|| items[2].err("missing task name"))?)?;
    let params = head[1..].iter().map(parse_term).collect::<Result<Vec<_>, _>>()?;
    let props = keyword_props(form, &items[3..], &[":pre", ":body"])?;
    let pre = match props.get(":pre") {
        Some(p) => parse_formula(p)?,
        None => Formula::True,
    };
    let mut body = Vec::new();
    let mut refs = Vec::new();
    if let Some(b) = props.get(":body") {
        for t in list_of(b)? {
            let tmpl = parse_task_template(t)?;
            refs.push((tmpl.name.clone(), t.clone()));
            body.push(tmpl);
        }
    }
    Ok((
        Method {
            name,
            task,
            params,
            pre,
            body,
            rank: 0,
        },
        refs,
    ))
}

fn keyword_props<'a>(
    form: &SExpr,
    items: &'a [SExpr],
    allowed: &[&str],
) -> Result<BTreeMap<String, &'a SExpr>, SymbolicError> {
    let mut out = BTreeMap::new();
    let mut it = items.iter();
    while let Some(k) = it.next() {
        let key = k
            .as_atom()
            .filter(|s| s.starts_with(':'))
            .ok_or_else(|| k.err("expected a `:keyword`"))?;
        if !allowed.contains(&key) {
            return Err(k.err(format!("unexpected keyword `{key}`")));
        }
        let v = it
            .next()
            .ok_or_else(|| form.err(format!("missing value for `{key}`")))?;
        if out.insert(key.to_string(), v).is_some() {
            return Err(k.err(format!("repeated keyword `{key}`")));
        }
    }
    Ok(out)
}

fn list_of(e: &SExpr) -> Result<&[SExpr], SymbolicError> {
    e.as_list().ok_or_else(|| e.err("expected a list"))
}

fn atom_sym(e: &SExpr) -> Result<Sym, SymbolicError> {
    let s = e.as_atom().ok_or_else(|| e.err("expected a symbol"))?;
    if s.starts_with('?') {
        return Err(e.err("expected a constant, found a variable"));
    }
    Ok(Sym::new(s))
}

fn parse_term(e: &SExpr) -> Result<Term, SymbolicError> {
    let s = e.as_atom().ok_or_else(|| e.err("expected a term"))?;
    if s == "?" {
        return Err(e.err("empty variable name"));
    }
    Ok(Term::parse(s))
}

fn parse_expr(e: &SExpr) -> Result<Expr, SymbolicError> {
    match e {
        SExpr::Atom(..) => Ok(Expr::Term(parse_term(e)?)),
        SExpr::List(items, _) => {
            let op = items
                .first()
                .and_then(SExpr::as_atom)
                .and_then(ArithOp::from_symbol)
                .ok_or_else(|| e.err("expected `(+|-|* a b)`"))?;
            if items.len() != 3 {
                return Err(e.err("arithmetic takes exactly two operands"));
            }
            Ok(Expr::Arith(
                op,
                Box::new(parse_expr(&items[1])?),
                Box::new(parse_expr(&items[2])?),
            ))
        }
    }
}

fn parse_atom(e: &SExpr) -> Result<Atom, SymbolicError> {
    let items = e.as_list().ok_or_else(|| e.err("expected an atom `(pred args...)`"))?;
    let pred = items.first().ok_or_else(|| e.err("empty atom"))?;
    let pred = atom_sym(pred)?;
    if matches!(pred.as_str(), "and" | "not" | "forall" | "?") || CmpOp::from_symbol(pred.as_str()).is_some() {
        return Err(e.err(format!("`{pred}` is not a predicate")));
    }
    Ok(Atom {
        pred,
        args: items[1..].iter().map(parse_expr).collect::<Result<_, _>>()?,
    })
}

fn parse_fact(e: &SExpr) -> Result<Fact, SymbolicError> {
    let atom = parse_atom(e)?;
    let mut args = Vec::new();
    for a in &atom.args {
        match a {
            Expr::Term(Term::Const(c)) => args.push(c.clone()),
            _ => return Err(e.err("expected a ground atom")),
        }
    }
    Ok(Fact { pred: atom.pred, args })
}

fn parse_task_template(e: &SExpr) -> Result<TaskTemplate, SymbolicError> {
    let atom = parse_atom(e)?;
    Ok(TaskTemplate {
        name: atom.pred,
        args: atom.args,
    })
}

pub fn parse_formula(e: &SExpr) -> Result<Formula, SymbolicError> {
    let items = match e {
        SExpr::Atom(s, _) if s == "true" => return Ok(Formula::True),
        SExpr::Atom(..) => return Err(e.err("expected a formula")),
        SExpr::List(items, _) => items,
    };
    let Some(head) = items.first() else {
        return Ok(Formula::True);
    };
    let Some(keyword) = head.as_atom() else {
        // ((p ..) (q ..)) is an implicit conjunction.
        return Ok(Formula::And(items.iter().map(parse_formula).collect::<Result<_, _>>()?));
    };
    match keyword {
        "and" => Ok(Formula::And(
            items[1..].iter().map(parse_formula).collect::<Result<_, _>>()?,
        )),
        "not" => {
            if items.len() != 2 {
                return Err(e.err("`not` takes one formula"));
            }
            match parse_formula(&items[1])? {
                Formula::Lit(l) if l.positive => Ok(Formula::Lit(Literal { positive: false, ..l })),
                other => Ok(Formula::Not(Box::new(other))),
            }
        }
        "forall" => {
            let decl = items.get(1).and_then(SExpr::as_list);
            let (var, ty) = match decl {
                Some([v, t]) => match (parse_term(v)?, atom_sym(t)?) {
                    (Term::Var(v), t) => (v, t),
                    _ => return Err(items[1].err("expected `(?var type)`")),
                },
                _ => return Err(e.err("expected `(forall (?var type) formula)`")),
            };
            let body = items.get(2).ok_or_else(|| e.err("missing forall body"))?;
            if items.len() > 3 {
                return Err(items[3].err("forall takes one body formula"));
            }
            Ok(Formula::Forall {
                var,
                ty,
                body: Box::new(parse_formula(body)?),
            })
        }
        "?" => {
            let pred = atom_sym(items.get(1).ok_or_else(|| e.err("`?` needs a task name"))?)?;
            let args = items[2..].iter().map(parse_expr).collect::<Result<_, _>>()?;
            Ok(Formula::Lit(Literal::evaluable(Atom { pred, args })))
        }
        k => {
            if let Some(op) = CmpOp::from_symbol(k) {
                if items.len() != 3 {
                    return Err(e.err("comparison takes two operands"));
                }
                return Ok(Formula::Compare(op, parse_expr(&items[1])?, parse_expr(&items[2])?));
            }
            let atom = parse_atom(e)?;
            let lit = Literal::positive(atom);
            debug_assert_ne!(lit.kind, LiteralKind::Evaluable);
            Ok(Formula::Lit(lit))
        }
    }
}
