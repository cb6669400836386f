//! Finite Tarskian models: thresholded truth, extensions and soundness checks.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use fga_kernel::Multivector64;
use serde::Deserialize;

use crate::compose::{apply_unary, TruthCondition};
use crate::error::{Error, Result};
use crate::lexicon::{LexicalEntry, Lexicon};
use crate::types::SemanticKind;

/// Default truth threshold.
pub const DEFAULT_TAU: f64 = 0.5;

/// How a scalar is compared with `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruthRule {
    /// `α > τ`. Matches the extension and relation definitions, which compare signed values.
    #[default]
    Signed,
    /// `|α| > τ`.
    Magnitude,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    individuals: Vec<String>,
    assignments: BTreeMap<String, String>,
    #[serde(default)]
    extensions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<[String; 2]>>,
    tau: Option<f64>,
    #[serde(default)]
    truth_rule: TruthRule,
}

/// Where an extension came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionSource {
    Explicit,
    Geometric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension<T> {
    pub members: BTreeSet<T>,
    pub source: ExtensionSource,
    /// Set when an explicit listing disagrees with the geometry.
    pub warning: Option<String>,
}

/// A model `<D, I, φ, τ>` over the entity entries of a lexicon.
#[derive(Debug, Clone)]
pub struct TarskianModel {
    domain: Vec<String>,
    phi: BTreeMap<String, String>,
    vectors: BTreeMap<String, Multivector64>,
    extensions: BTreeMap<String, BTreeSet<String>>,
    relations: BTreeMap<String, BTreeSet<(String, String)>>,
    tau: f64,
    rule: TruthRule,
}

impl TarskianModel {
    /// Builds a model; `phi` maps each individual to an entity entry, and every
    /// entity entry must be used exactly once.
    pub fn new(lexicon: &Lexicon, phi: BTreeMap<String, String>, tau: f64) -> Result<Self> {
        if tau.is_nan() || tau <= 0.0 {
            return Err(Error::Model(format!("τ must be positive, got {tau}")));
        }
        let mut vectors = BTreeMap::new();
        let mut used = BTreeSet::new();
        for (ind, name) in &phi {
            let e = lexicon.get(name).map_err(|_| Error::Model(format!("`{ind}` is assigned to unknown entry `{name}`")))?;
            if e.kind != SemanticKind::Entity {
                return Err(Error::Model(format!("`{ind}` is assigned to `{name}`, which is not an entity")));
            }
            if !used.insert(e.name.clone()) {
                return Err(Error::Model(format!("entry `{}` is assigned twice", e.name)));
            }
            vectors.insert(ind.clone(), e.value.clone());
        }
        if let Some(missing) = lexicon.entities().find(|e| !used.contains(&e.name)) {
            return Err(Error::Model(format!("entity `{}` has no individual", missing.name)));
        }
        Ok(TarskianModel {
            domain: phi.keys().cloned().collect(),
            phi,
            vectors,
            extensions: BTreeMap::new(),
            relations: BTreeMap::new(),
            tau,
            rule: TruthRule::Signed,
        })
    }

    pub fn load(path: impl AsRef<Path>, lexicon: &Lexicon) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Model(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, lexicon)
    }

    pub fn from_json(text: &str, lexicon: &Lexicon) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)
            .map_err(|e| Error::ModelSchema { line: e.line(), column: e.column(), message: e.to_string() })?;
        let declared: BTreeSet<&String> = file.individuals.iter().collect();
        let assigned: BTreeSet<&String> = file.assignments.keys().collect();
        if declared != assigned || declared.len() != file.individuals.len() {
            return Err(Error::Model("individuals and assignments must name the same individuals once".into()));
        }
        let mut m = Self::new(lexicon, file.assignments, file.tau.unwrap_or(DEFAULT_TAU))?;
        m.rule = file.truth_rule;
        for (pred, members) in file.extensions {
            let set: BTreeSet<String> = members.into_iter().collect();
            m.check_individuals(set.iter())?;
            m.extensions.insert(pred, set);
        }
        for (rel, pairs) in file.relations {
            let set: BTreeSet<(String, String)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
            m.check_individuals(set.iter().flat_map(|(a, b)| [a, b]))?;
            m.relations.insert(rel, set);
        }
        Ok(m)
    }

    fn check_individuals<'a>(&self, mut it: impl Iterator<Item = &'a String>) -> Result<()> {
        match it.find(|i| !self.phi.contains_key(*i)) {
            Some(bad) => Err(Error::Model(format!("unknown individual `{bad}`"))),
            None => Ok(()),
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn with_tau(&self, tau: f64) -> Self {
        TarskianModel { tau, ..self.clone() }
    }

    pub fn rule(&self) -> TruthRule {
        self.rule
    }

    pub fn with_rule(&self, rule: TruthRule) -> Self {
        TarskianModel { rule, ..self.clone() }
    }

    /// Entity entry name for an individual.
    pub fn entity_of(&self, individual: &str) -> Option<&str> {
        self.phi.get(individual).map(String::as_str)
    }

    /// Individual denoted by an entity entry.
    pub fn individual_of(&self, entity: &str) -> Option<&str> {
        self.phi.iter().find(|(_, e)| e.eq_ignore_ascii_case(entity)).map(|(i, _)| i.as_str())
    }

    pub fn explicit_extension(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.extensions.get(name)
    }

    pub fn explicit_relation(&self, name: &str) -> Option<&BTreeSet<(String, String)>> {
        self.relations.get(name)
    }

    /// Thresholded truth of a scalar.
    pub fn denote_truth(&self, alpha: f64) -> bool {
        self.passes(alpha, self.tau)
    }

    fn passes(&self, alpha: f64, tau: f64) -> bool {
        match self.rule {
            TruthRule::Signed => alpha > tau,
            TruthRule::Magnitude => alpha.abs() > tau,
        }
    }

    /// Evaluates a derivation's final scalar under its truth condition.
    pub fn eval(&self, value: f64, condition: &TruthCondition) -> bool {
        match condition {
            TruthCondition::Threshold(t) => self.passes(value, t.unwrap_or(self.tau)),
            TruthCondition::Positive => value > 0.0,
            TruthCondition::Boolean => value > 0.5,
            TruthCondition::All(parts) => parts.iter().all(|(v, c)| self.eval(*v, c)),
        }
    }

    /// Truth of a predicate applied to an entity.
    pub fn predicate_truth(&self, p: &LexicalEntry, x: &LexicalEntry) -> Result<bool> {
        let alpha = apply_unary(p, x)?;
        Ok(match p.kind {
            SemanticKind::PolarPred => alpha > 0.0,
            _ => self.passes(alpha, p.threshold(self.tau)),
        })
    }

    fn entity_entry(&self, individual: &str) -> LexicalEntry {
        LexicalEntry::new(self.phi[individual].clone(), SemanticKind::Entity, self.vectors[individual].clone())
    }

    /// `{d : φ⁻¹(d)·P_E > τ}` (polar predicates: `> 0`).
    pub fn geometric_extension(&self, p: &LexicalEntry) -> Result<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        for d in &self.domain {
            if self.predicate_truth(p, &self.entity_entry(d))? {
                out.insert(d.clone());
            }
        }
        Ok(out)
    }

    /// Extension of a named predicate. An explicit listing wins; a disagreement with
    /// the geometry is reported in `warning`.
    pub fn extension(&self, name: &str, lexicon: &Lexicon) -> Result<Extension<String>> {
        let entry = lexicon.lookup(name).filter(|e| e.kind.is_predicate());
        let explicit = self.extensions.get(name).or_else(|| entry.and_then(|e| self.extensions.get(&e.name)));
        match (entry, explicit) {
            (Some(e), Some(listed)) => {
                let geo = self.geometric_extension(e)?;
                let warning = (geo != *listed)
                    .then(|| format!("extension of `{}`: listed {listed:?}, geometry gives {geo:?}", e.name));
                Ok(Extension { members: listed.clone(), source: ExtensionSource::Explicit, warning })
            }
            (Some(e), None) => {
                Ok(Extension { members: self.geometric_extension(e)?, source: ExtensionSource::Geometric, warning: None })
            }
            (None, Some(listed)) => Ok(Extension { members: listed.clone(), source: ExtensionSource::Explicit, warning: None }),
            (None, None) => Err(Error::UnknownPredicate(name.to_string())),
        }
    }

    /// `{(d1, d2) : φ⁻¹(d1) ⌟ (R ⌞ φ⁻¹(d2)) > τ}`.
    pub fn relation_denotation(&self, r: &LexicalEntry) -> Result<BTreeSet<(String, String)>> {
        if r.kind != SemanticKind::BinaryRel {
            return Err(Error::KindMismatch { name: r.name.clone(), expected: "a binary relation".into() });
        }
        let mut out = BTreeSet::new();
        for b in &self.domain {
            let partial = r.value.rc(&self.vectors[b])?;
            for a in &self.domain {
                if self.denote_truth(self.vectors[a].lc(&partial)?.scalar_part()) {
                    out.insert((a.clone(), b.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn relation(&self, name: &str, lexicon: &Lexicon) -> Result<Extension<(String, String)>> {
        let entry = lexicon.lookup(name).filter(|e| e.kind == SemanticKind::BinaryRel);
        let explicit = self.relations.get(name).or_else(|| entry.and_then(|e| self.relations.get(&e.name)));
        match (entry, explicit) {
            (Some(e), Some(listed)) => {
                let geo = self.relation_denotation(e)?;
                let warning = (geo != *listed)
                    .then(|| format!("relation `{}`: listed {listed:?}, geometry gives {geo:?}", e.name));
                Ok(Extension { members: listed.clone(), source: ExtensionSource::Explicit, warning })
            }
            (Some(e), None) => {
                Ok(Extension { members: self.relation_denotation(e)?, source: ExtensionSource::Geometric, warning: None })
            }
            (None, Some(listed)) => Ok(Extension { members: listed.clone(), source: ExtensionSource::Explicit, warning: None }),
            (None, None) => Err(Error::UnknownPredicate(name.to_string())),
        }
    }

    /// Every disagreement between explicit listings and the geometry.
    pub fn consistency_warnings(&self, lexicon: &Lexicon) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for name in self.extensions.keys() {
            if lexicon.lookup(name).is_some_and(|e| e.kind.is_predicate()) {
                out.extend(self.extension(name, lexicon)?.warning);
            }
        }
        for name in self.relations.keys() {
            if lexicon.lookup(name).is_some_and(|e| e.kind == SemanticKind::BinaryRel) {
                out.extend(self.relation(name, lexicon)?.warning);
            }
        }
        Ok(out)
    }

    /// Algebraic truth of `P(a)` against membership of `a` in the model's extension of `P`.
    pub fn soundness_atom(&self, p: &LexicalEntry, individual: &str, lexicon: &Lexicon) -> Result<Soundness> {
        let algebraic = self.predicate_truth(p, &self.entity_entry(individual))?;
        let member = self.extension(&p.name, lexicon)?.members.contains(individual);
        Ok(Soundness { algebraic, member })
    }

    pub fn soundness_rel(&self, r: &LexicalEntry, a: &str, b: &str, lexicon: &Lexicon) -> Result<Soundness> {
        let partial = r.value.rc(&self.vectors[b])?;
        let algebraic = self.denote_truth(self.vectors[a].lc(&partial)?.scalar_part());
        let member = self.relation(&r.name, lexicon)?.members.contains(&(a.to_string(), b.to_string()));
        Ok(Soundness { algebraic, member })
    }

    /// Collinearity certificate plus inclusion of extensions in this model.
    pub fn entails(&self, child: &LexicalEntry, parent: &LexicalEntry, lexicon: &Lexicon) -> Result<Entailment> {
        let collinear = child.name == parent.name
            || child.hyponym_of.as_ref().is_some_and(|(p, _)| p == &parent.name);
        let inclusion = self
            .extension(&child.name, lexicon)?
            .members
            .is_subset(&self.extension(&parent.name, lexicon)?.members);
        Ok(Entailment { collinear, inclusion })
    }
}

/// The two sides of a soundness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Soundness {
    pub algebraic: bool,
    pub member: bool,
}

impl Soundness {
    pub fn agrees(&self) -> bool {
        self.algebraic == self.member
    }
}

/// Entailment evidence: a hyponymy certificate and inclusion in one finite model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entailment {
    pub collinear: bool,
    pub inclusion: bool,
}

impl Entailment {
    pub fn holds(&self) -> bool {
        self.collinear && self.inclusion
    }
}
