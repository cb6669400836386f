use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::Subspace;

/// Semantic kinds and their grade/support signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemanticKind {
    Entity,
    #[serde(rename = "unary")]
    UnaryPred,
    #[serde(rename = "relation")]
    BinaryRel,
    Quantifier,
    #[serde(rename = "role")]
    RoleKey,
    #[serde(rename = "polar")]
    PolarPred,
    #[serde(rename = "gradable")]
    GradablePred,
    Artifact,
    DotObject,
    TruthValue,
}

/// Expected grades and permitted support of a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticType {
    pub kind: SemanticKind,
    pub expected_grades: Vec<usize>,
    pub expected_support: BTreeSet<Subspace>,
}

impl SemanticKind {
    pub fn semantic_type(self) -> SemanticType {
        use Subspace::*;
        let (grades, support): (Vec<usize>, Vec<Subspace>) = match self {
            SemanticKind::Entity => (vec![1], vec![Entity]),
            SemanticKind::UnaryPred | SemanticKind::GradablePred => (vec![1], vec![Entity, Predicate]),
            SemanticKind::PolarPred => (vec![0, 1], vec![Entity, Predicate]),
            SemanticKind::BinaryRel => (vec![2], vec![Entity, Predicate]),
            SemanticKind::Quantifier => (vec![2], vec![Predicate]),
            SemanticKind::RoleKey => (vec![1], vec![Role]),
            SemanticKind::Artifact => (vec![2], vec![Entity, Predicate]),
            SemanticKind::DotObject => (vec![1, 2, 3], vec![Entity, Predicate, Role]),
            SemanticKind::TruthValue => (vec![0], vec![]),
        };
        SemanticType { kind: self, expected_grades: grades, expected_support: support.into_iter().collect() }
    }

    pub fn is_predicate(self) -> bool {
        matches!(self, SemanticKind::UnaryPred | SemanticKind::GradablePred | SemanticKind::PolarPred)
    }
}

impl fmt::Display for SemanticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SemanticKind::Entity => "entity",
            SemanticKind::UnaryPred => "unary predicate",
            SemanticKind::BinaryRel => "binary relation",
            SemanticKind::Quantifier => "quantifier",
            SemanticKind::RoleKey => "role key",
            SemanticKind::PolarPred => "polar predicate",
            SemanticKind::GradablePred => "gradable predicate",
            SemanticKind::Artifact => "artifact",
            SemanticKind::DotObject => "dot object",
            SemanticKind::TruthValue => "truth value",
        };
        f.write_str(s)
    }
}

/// Qualia roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quale {
    Formal,
    #[serde(alias = "CONSTITUTIVE")]
    Const,
    Telic,
    Agentive,
}

impl Quale {
    /// Record-type label of the quale field.
    pub fn label(self) -> &'static str {
        match self {
            Quale::Formal => "q_F",
            Quale::Const => "q_C",
            Quale::Telic => "q_T",
            Quale::Agentive => "q_A",
        }
    }

    /// Grade at which the quale component is stored in a lexical value.
    pub fn grade(self) -> usize {
        match self {
            Quale::Formal => 1,
            Quale::Const => 2,
            Quale::Telic | Quale::Agentive => 3,
        }
    }

    /// Role label tagging frame components of this quale, if any.
    pub fn role_label(self) -> Option<&'static str> {
        match self {
            Quale::Telic => Some("TL"),
            Quale::Agentive => Some("AG"),
            _ => None,
        }
    }
}

impl fmt::Display for Quale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quale::Formal => "FORMAL",
            Quale::Const => "CONST",
            Quale::Telic => "TELIC",
            Quale::Agentive => "AGENTIVE",
        };
        f.write_str(s)
    }
}

const LABELS: [&str; 5] = ["x", "q_F", "q_C", "q_T", "q_A"];

/// A record type: labelled fields with opaque descriptors.
///
/// A descriptor is read as a conjunction of its `∧`- or `&`-separated parts, and a
/// field of `T1` refines the same field of `T2` when it contains all of its conjuncts.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RecordType {
    fields: BTreeMap<String, String>,
}

fn conjuncts(d: &str) -> BTreeSet<String> {
    d.split(['∧', '&']).map(|c| c.split_whitespace().collect::<Vec<_>>().join(" ")).filter(|c| !c.is_empty()).collect()
}

impl RecordType {
    pub fn new<I, K, V>(fields: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let fields: BTreeMap<String, String> = fields.into_iter().map(|(k, v)| (k.into(), v.into())).collect();
        if let Some(bad) = fields.keys().find(|k| !LABELS.contains(&k.as_str())) {
            return Err(Error::MissingField(bad.clone()));
        }
        Ok(RecordType { fields })
    }

    pub fn fields(&self) -> &BTreeMap<String, String> {
        &self.fields
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.fields.keys().map(String::as_str).collect()
    }

    pub fn has(&self, q: Quale) -> bool {
        self.fields.contains_key(q.label())
    }

    /// `self ≤ other`: every field of `other` is present and refined in `self`.
    pub fn is_subtype_of(&self, other: &RecordType) -> bool {
        other.fields.iter().all(|(label, d2)| match self.fields.get(label) {
            Some(d1) => conjuncts(d2).is_subset(&conjuncts(d1)),
            None => false,
        })
    }

    /// Restriction to the `x` field and the field of quale `q`.
    pub fn project(&self, q: Quale) -> Result<RecordType> {
        let d = self.fields.get(q.label()).ok_or_else(|| Error::MissingField(q.label().to_string()))?;
        let mut fields = BTreeMap::new();
        if let Some(x) = self.fields.get("x") {
            fields.insert("x".to_string(), x.clone());
        }
        fields.insert(q.label().to_string(), d.clone());
        Ok(RecordType { fields })
    }

    /// Adds a conjunct to a field, creating it if needed.
    pub fn refine(&self, label: &str, conjunct: &str) -> RecordType {
        let mut out = self.clone();
        let entry = out.fields.entry(label.to_string()).or_default();
        if entry.is_empty() {
            *entry = conjunct.to_string();
        } else if !conjuncts(entry).contains(conjunct) {
            *entry = format!("{entry} ∧ {conjunct}");
        }
        out
    }
}

impl fmt::Display for RecordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fields.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Record subtyping, `t1 ≤ t2`.
pub fn record_subtype(t1: &RecordType, t2: &RecordType) -> bool {
    t1.is_subtype_of(t2)
}

/// Projection of a record type onto one quale.
pub fn project_quale_field(t: &RecordType, q: Quale) -> Result<RecordType> {
    t.project(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(fields: &[(&str, &str)]) -> RecordType {
        RecordType::new(fields.iter().copied()).unwrap()
    }

    #[test]
    fn hyponym_records() {
        let dog = rt(&[("x", "Ind"), ("q_F", "dog(x)")]);
        let poodle = dog.refine("q_F", "poodle(x)");
        assert!(record_subtype(&poodle, &dog));
        assert!(!record_subtype(&dog, &poodle));
        assert!(record_subtype(&dog, &dog));
    }

    #[test]
    fn projection() {
        let book = rt(&[("x", "Ind"), ("q_F", "phys(x) ∧ info(x)"), ("q_T", "read(e,y,x)"), ("q_A", "write(e,z,x)")]);
        let p = project_quale_field(&book, Quale::Telic).unwrap();
        assert_eq!(p.labels(), ["x", "q_T"].into());
        assert!(record_subtype(&book, &p));
        let happy = rt(&[("x", "Ind"), ("q_F", "happy(x)")]);
        assert_eq!(project_quale_field(&happy, Quale::Telic).unwrap_err(), Error::MissingField("q_T".into()));
    }

    #[test]
    fn unknown_label_rejected() {
        assert!(RecordType::new([("colour", "red")]).is_err());
    }
}
