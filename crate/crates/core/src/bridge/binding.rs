use std::collections::BTreeMap;

use crate::gtp::{GtpTask, TaskKind};
use crate::symbolic::{Fact, HtnDomain};

/// How one evaluable predicate maps to a geometric task.
#[derive(Clone, Debug, PartialEq)]
pub enum Template {
    /// Always true, no geometric effect.
    Stub,
    /// Atomic or compound task over the literal's arguments. A single kind
    /// gives an atomic task.
    Task {
        kinds: Vec<TaskKind>,
        keep_visible: Option<String>,
    },
}

/// Evaluable predicate name → geometric task template.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub templates: BTreeMap<String, Template>,
    /// Visibility share required by human-directed tasks.
    pub visible: f64,
}

impl Binding {
    pub fn empty() -> Self {
        Binding {
            templates: BTreeMap::new(),
            visible: 0.5,
        }
    }

    pub fn with(mut self, pred: &str, t: Template) -> Self {
        self.templates.insert(pred.into(), t);
        self
    }

    pub fn task(kinds: &[TaskKind]) -> Template {
        Template::Task {
            kinds: kinds.to_vec(),
            keep_visible: None,
        }
    }

    /// Predicates of both librarian domains.
    pub fn librarian() -> Self {
        use TaskKind::*;
        Binding::empty()
            .with("pick", Self::task(&[Pick]))
            .with("makeAcc", Self::task(&[MakeAcc]))
            .with("show", Self::task(&[Show]))
            .with("give", Self::task(&[Give]))
            .with("putAway", Self::task(&[PutAway]))
            .with("putOn", Self::task(&[PutOn]))
            .with("navTo", Template::Stub)
            .with("pickMakeAcc", Self::task(&[Pick, MakeAcc]))
            .with("pickShow", Self::task(&[Pick, Show]))
            .with("pickPutAway", Self::task(&[Pick, PutAway]))
            .with(
                "pickMakeAccKeepBooks",
                Template::Task {
                    kinds: vec![Pick, MakeAcc],
                    keep_visible: Some("book".into()),
                },
            )
    }

    /// Evaluable predicates of `domain` with no template.
    pub fn unbound(&self, domain: &HtnDomain) -> Vec<String> {
        domain
            .evaluable_predicates()
            .into_iter()
            .map(|p| p.to_string())
            .filter(|p| !self.templates.contains_key(p))
            .collect()
    }

    /// Task for a ground evaluable literal; `Ok(None)` for stubs.
    pub fn task_for(&self, atom: &Fact) -> Result<Option<GtpTask>, String> {
        let pred = atom.pred.as_str();
        let t = self
            .templates
            .get(pred)
            .ok_or_else(|| format!("no geometric task bound to `{pred}`"))?;
        let Template::Task { kinds, keep_visible } = t else {
            return Ok(None);
        };
        let args: Vec<&str> = atom.args.iter().map(|a| a.as_str()).collect();
        let arg = |i: usize| {
            args.get(i)
                .copied()
                .ok_or_else(|| format!("`{atom}` lacks argument {}", i + 1))
        };
        let mut parts = Vec::new();
        for k in kinds {
            let mut task = match k {
                TaskKind::Pick => GtpTask::pick(arg(0)?),
                TaskKind::MakeAcc => GtpTask::make_acc(arg(0)?, arg(1)?, self.visible),
                TaskKind::Show => GtpTask::show(arg(0)?, arg(1)?, self.visible),
                TaskKind::Give => GtpTask::give(arg(0)?, arg(1)?, self.visible),
                TaskKind::PutAway => GtpTask::put_away(arg(0)?, arg(1)?),
                TaskKind::PutOn => GtpTask::put_on(arg(0)?, arg(1)?),
                TaskKind::Compound => return Err("nested compound template".into()),
            };
            if let Some(c) = keep_visible {
                if *k != TaskKind::Pick {
                    task = task.with_keep_visible(c);
                }
            }
            parts.push(task);
        }
        Ok(Some(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            GtpTask::compound(parts)
        }))
    }
}
