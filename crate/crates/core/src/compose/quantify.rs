use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lexicon::{LexicalEntry, Lexicon};
use crate::model::TarskianModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Some,
    Every,
}

impl Quantifier {
    /// `A ∩ B ≠ ∅` or `A ⊆ B`.
    pub fn holds(self, restrictor: &BTreeSet<String>, scope: &BTreeSet<String>) -> bool {
        match self {
            Quantifier::Some => !restrictor.is_disjoint(scope),
            Quantifier::Every => restrictor.is_subset(scope),
        }
    }
}

/// Quantifier truth over the model's extensions, returned as 0 or 1.
pub fn quantify(
    q: Quantifier,
    restrictor: &LexicalEntry,
    scope: &LexicalEntry,
    lexicon: &Lexicon,
    model: Option<&TarskianModel>,
) -> Result<f64> {
    let model = model.ok_or(Error::ModelRequired)?;
    let a = model.extension(&restrictor.name, lexicon)?.members;
    let b = model.extension(&scope.name, lexicon)?.members;
    Ok(if q.holds(&a, &b) { 1.0 } else { 0.0 })
}
