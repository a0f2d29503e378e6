use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::domain::Operator;
use super::formula::Fact;
use super::state::State;
use super::term::Binding;
use super::SymbolicError;

/// Add and delete lists computed from a geometric solution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoEffects {
    pub adds: BTreeSet<Fact>,
    pub deletes: BTreeSet<Fact>,
}

impl GeoEffects {
    pub fn is_empty(&self) -> bool {
        self.adds.is_empty() && self.deletes.is_empty()
    }
}

/// Ground static effects of `op` under `binding`.
pub fn static_effects(op: &Operator, binding: &Binding) -> Result<GeoEffects, SymbolicError> {
    let ground = |atoms: &[super::formula::Atom]| -> Result<BTreeSet<Fact>, SymbolicError> {
        atoms.iter().map(|a| a.ground(binding)).collect()
    };
    Ok(GeoEffects {
        adds: ground(&op.add)?,
        deletes: ground(&op.del)?,
    })
}

/// `(state \ (static deletes ∪ geo deletes)) ∪ (static adds ∪ geo adds)`.
/// The input state is left untouched.
pub fn apply(state: &State, op: &Operator, binding: &Binding, geo: &GeoEffects) -> Result<State, SymbolicError> {
    let st = static_effects(op, binding)?;
    let mut next = state.clone();
    for f in st.deletes.iter().chain(&geo.deletes) {
        next.remove(f);
    }
    for f in st.adds.into_iter().chain(geo.adds.iter().cloned()) {
        next.insert(f);
    }
    Ok(next)
}
