use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Fact;
use super::term::Sym;

/// Closed-world symbolic state, partitioned into author-asserted facts and
/// geometry-derived shared facts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    ordinary: BTreeSet<Fact>,
    shared: BTreeSet<Fact>,
}

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_facts<I: IntoIterator<Item = Fact>>(facts: I) -> Self {
        let mut s = State::new();
        for f in facts {
            s.insert(f);
        }
        s
    }

    /// Routes the fact to the partition its predicate belongs to.
    pub fn insert(&mut self, fact: Fact) -> bool {
        if fact.is_shared() {
            self.shared.insert(fact)
        } else {
            self.ordinary.insert(fact)
        }
    }

    pub fn remove(&mut self, fact: &Fact) -> bool {
        if fact.is_shared() {
            self.shared.remove(fact)
        } else {
            self.ordinary.remove(fact)
        }
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        if fact.is_shared() {
            self.shared.contains(fact)
        } else {
            self.ordinary.contains(fact)
        }
    }

    pub fn ordinary(&self) -> &BTreeSet<Fact> {
        &self.ordinary
    }

    pub fn shared(&self) -> &BTreeSet<Fact> {
        &self.shared
    }

    /// Replaces the whole shared partition, leaving ordinary facts untouched.
    pub fn replace_shared(&mut self, shared: BTreeSet<Fact>) {
        debug_assert!(shared.iter().all(Fact::is_shared));
        self.shared = shared;
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.ordinary.iter().chain(self.shared.iter())
    }

    /// Facts for one predicate, in sorted order.
    pub fn facts_of<'a>(&'a self, pred: &'a Sym) -> impl Iterator<Item = &'a Fact> + 'a {
        let part = if super::formula::is_shared_predicate(pred.as_str()) {
            &self.shared
        } else {
            &self.ordinary
        };
        let start = Fact {
            pred: pred.clone(),
            args: Vec::new(),
        };
        part.range(start..).take_while(move |f| &f.pred == pred)
    }

    pub fn len(&self) -> usize {
        self.ordinary.len() + self.shared.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, fact) in self.facts().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{fact}")?;
        }
        write!(f, "}}")
    }
}
