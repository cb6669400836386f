use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use fga_kernel::{Multivector64, Rotor64};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::space::{SemanticSpace, Subspace, SubspaceLayout, EPS_NUM, EPS_ZERO};
use crate::types::{Quale, RecordType, SemanticKind, SemanticType};

/// Default hyponymy factor when a lexicon omits `lambda`.
pub const DEFAULT_LAMBDA: f64 = 0.9;

/// A quale rotor: a plane and an angle, applied as `exp(-angle/2 B^)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QualeRotor {
    pub quale: Quale,
    pub plane: Multivector64,
    pub generators: (usize, usize),
    pub angle: f64,
}

impl QualeRotor {
    pub fn rotor(&self) -> Result<Rotor64> {
        Ok(Rotor64::exp(&self.plane, self.angle)?)
    }
}

/// Degree parameters of a gradable predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeParams {
    pub threshold: Option<f64>,
    pub very: f64,
    pub slightly: f64,
    /// Optional prototype rotation applied by `very`.
    pub prototype: Option<(Multivector64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModifierMode {
    Intersective,
    Subsective,
    Privative,
}

/// How an adjective modifies nouns.
#[derive(Debug, Clone, PartialEq)]
pub struct Modifier {
    pub mode: ModifierMode,
    pub angle: Option<f64>,
    pub plane: Option<Multivector64>,
}

/// Axis and pole of a polar predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct Polar {
    pub axis: Multivector64,
    pub positive: bool,
}

/// A typed lexical entry.
#[derive(Debug, Clone, PartialEq)]
pub struct LexicalEntry {
    pub name: String,
    /// Extra surface forms (inflections) that resolve to this entry.
    pub forms: Vec<String>,
    pub value: Multivector64,
    pub kind: SemanticKind,
    pub qualia: BTreeMap<Quale, QualeRotor>,
    pub record_type: Option<RecordType>,
    pub degree_params: Option<DegreeParams>,
    /// Parent and factor when built by [`mk_hyponym`].
    pub hyponym_of: Option<(String, f64)>,
    pub polar: Option<Polar>,
    pub modifier: Option<Modifier>,
    /// Quale this verb coerces its object to.
    pub coerces: Option<Quale>,
    /// Quale this verb targets by inner application.
    pub targets: Option<Quale>,
}

impl LexicalEntry {
    pub fn new(name: impl Into<String>, kind: SemanticKind, value: Multivector64) -> Self {
        LexicalEntry {
            name: name.into(),
            forms: Vec::new(),
            value,
            kind,
            qualia: BTreeMap::new(),
            record_type: None,
            degree_params: None,
            hyponym_of: None,
            polar: None,
            modifier: None,
            coerces: None,
            targets: None,
        }
    }

    pub fn sem_type(&self) -> SemanticType {
        self.kind.semantic_type()
    }

    pub fn with_quale(mut self, q: QualeRotor) -> Self {
        self.qualia.insert(q.quale, q);
        self
    }

    pub fn with_record(mut self, rt: RecordType) -> Self {
        self.record_type = Some(rt);
        self
    }

    /// Checks grade and support against the kind.
    pub fn validate(&self, space: &SemanticSpace) -> Result<()> {
        let t = self.sem_type();
        let scale = self.value.max_abs().max(1.0);
        let grades = self.value.grades(EPS_ZERO * scale);
        if grades.iter().any(|g| !t.expected_grades.contains(g)) {
            return Err(Error::GradeViolation { name: self.name.clone(), found: grades, expected: t.expected_grades });
        }
        let support = space.support(&self.value);
        let violation = || Error::SupportViolation {
            name: self.name.clone(),
            found: support.iter().copied().collect(),
            allowed: t.expected_support.iter().copied().collect(),
        };
        if !support.is_subset(&t.expected_support) {
            return Err(violation());
        }
        match self.kind {
            SemanticKind::Entity | SemanticKind::RoleKey if support != t.expected_support => return Err(violation()),
            SemanticKind::BinaryRel if !has_entity_leg(space, &self.value) => return Err(violation()),
            _ => {}
        }
        if self.kind != SemanticKind::TruthValue && self.value.is_zero_within(EPS_ZERO) {
            return Err(Error::ZeroVector(self.name.clone()));
        }
        Ok(())
    }

    /// Threshold for this predicate, falling back to `tau`.
    pub fn threshold(&self, tau: f64) -> f64 {
        self.degree_params.as_ref().and_then(|d| d.threshold).unwrap_or(tau)
    }
}

impl fmt::Display for LexicalEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.kind)
    }
}

fn has_entity_leg(space: &SemanticSpace, m: &Multivector64) -> bool {
    m.terms().any(|(b, c)| {
        c.abs() > EPS_ZERO && b.indices().any(|g| space.layout().subspace_of(g) == Some(Subspace::Entity))
    })
}

fn require_support(space: &SemanticSpace, name: &str, m: &Multivector64, allowed: &[Subspace]) -> Result<()> {
    let support = space.support(m);
    let allowed: BTreeSet<Subspace> = allowed.iter().copied().collect();
    if !support.is_subset(&allowed) {
        return Err(Error::SupportViolation {
            name: name.to_string(),
            found: support.into_iter().collect(),
            allowed: allowed.into_iter().collect(),
        });
    }
    Ok(())
}

fn unit(name: &str, v: &Multivector64) -> Result<Multivector64> {
    let n2 = v.norm_squared();
    if n2.abs() <= EPS_ZERO {
        return Err(Error::ZeroVector(name.to_string()));
    }
    Ok(v.scale(1.0 / n2.abs().sqrt()))
}

/// A unit entity vector in `V_E`.
pub fn mk_entity(space: &SemanticSpace, name: &str, direction: &Multivector64) -> Result<LexicalEntry> {
    require_support(space, name, direction, &[Subspace::Entity])?;
    if direction.homogeneous_grade(EPS_ZERO) != Some(1) {
        return Err(Error::ZeroVector(name.to_string()));
    }
    let e = LexicalEntry::new(name, SemanticKind::Entity, unit(name, direction)?);
    e.validate(space)?;
    Ok(e)
}

/// A unary predicate `P = P_E + P_P`.
pub fn mk_unary(
    space: &SemanticSpace,
    name: &str,
    e_comp: &Multivector64,
    p_comp: &Multivector64,
) -> Result<LexicalEntry> {
    require_support(space, name, e_comp, &[Subspace::Entity])?;
    require_support(space, name, p_comp, &[Subspace::Predicate])?;
    let e = LexicalEntry::new(name, SemanticKind::UnaryPred, e_comp + p_comp);
    e.validate(space)?;
    Ok(e)
}

/// A gradable predicate with its degree parameters.
pub fn mk_gradable(
    space: &SemanticSpace,
    name: &str,
    e_comp: &Multivector64,
    p_comp: &Multivector64,
    params: DegreeParams,
) -> Result<LexicalEntry> {
    let mut e = mk_unary(space, name, e_comp, p_comp)?;
    e.kind = SemanticKind::GradablePred;
    e.degree_params = Some(params);
    Ok(e)
}

/// A binary relation: a bivector over `V_E ⊕ V_P` with at least one entity leg.
pub fn mk_relation(space: &SemanticSpace, name: &str, bivector: &Multivector64) -> Result<LexicalEntry> {
    let e = LexicalEntry::new(name, SemanticKind::BinaryRel, bivector.clone());
    e.validate(space)?;
    Ok(e)
}

/// Registers role keys and returns them as entries.
pub fn mk_role_keys<S: AsRef<str>>(space: &mut SemanticSpace, labels: &[S]) -> Result<Vec<LexicalEntry>> {
    space.register_roles(labels)?;
    labels
        .iter()
        .map(|l| Ok(LexicalEntry::new(l.as_ref(), SemanticKind::RoleKey, space.role_key(l.as_ref())?)))
        .collect()
}

/// The complementary idempotents `p± = ½(1 ± e)`.
pub fn mk_polar_pair(
    space: &SemanticSpace,
    positive: &str,
    negative: &str,
    axis: &Multivector64,
) -> Result<(LexicalEntry, LexicalEntry)> {
    if axis.homogeneous_grade(EPS_ZERO) != Some(1) || (axis.norm_squared() - 1.0).abs() > EPS_NUM {
        return Err(Error::NonPositiveAxis);
    }
    require_support(space, positive, axis, &[Subspace::Entity, Subspace::Predicate])?;
    let half = Multivector64::scalar(space.algebra(), 0.5);
    let mk = |name: &str, sign: f64| {
        let mut e = LexicalEntry::new(name, SemanticKind::PolarPred, &half + &axis.scale(0.5 * sign));
        e.polar = Some(Polar { axis: axis.clone(), positive: sign > 0.0 });
        e
    };
    Ok((mk(positive, 1.0), mk(negative, -1.0)))
}

/// A hyponym whose `V_P` component is `λ` times the parent's.
pub fn mk_hyponym(
    space: &SemanticSpace,
    name: &str,
    parent: &LexicalEntry,
    lambda: f64,
    e_comp: &Multivector64,
) -> Result<LexicalEntry> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let p_comp = space.project(&parent.value, Subspace::Predicate).scale(lambda);
    let mut e = mk_unary(space, name, e_comp, &p_comp)?;
    e.kind = parent.kind;
    e.hyponym_of = Some((parent.name.clone(), lambda));
    e.record_type = parent.record_type.as_ref().map(|rt| rt.refine("q_F", &format!("{name}(x)")));
    Ok(e)
}

/// `|P_B(v)| / |v|` with `P_B(v) = (v ⌟ B) B⁻¹`.
pub fn blade_typicality(instance: &Multivector64, concept: &Multivector64) -> Result<f64> {
    let inv = concept.inverse().map_err(|_| Error::NullBlade)?;
    let proj = instance.lc(concept)?.gp(&inv)?.grade(1);
    let v = instance.norm_squared().abs().sqrt();
    if v == 0.0 {
        return Err(Error::ZeroVector("instance".into()));
    }
    Ok(proj.norm_squared().abs().sqrt() / v)
}

/// Failure while reading a lexicon file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LexiconError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("line {line}: entry `{name}`: {source}")]
    Entry { line: usize, name: String, source: Error },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    layout: LayoutSpec,
    #[serde(default)]
    roles: Vec<String>,
    entries: Vec<EntrySpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutSpec {
    subspaces: Vec<SubspaceSpec>,
    max_grade: Option<usize>,
    lift_axes: Option<[String; 2]>,
}

fn positive() -> i8 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceSpec {
    name: Subspace,
    dim: usize,
    #[serde(default = "positive")]
    metric: i8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QualeSpec {
    quale: Quale,
    plane: [String; 2],
    angle: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrototypeSpec {
    plane: [String; 2],
    angle: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeSpec {
    threshold: Option<f64>,
    very: f64,
    slightly: f64,
    prototype: Option<PrototypeSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModifierSpec {
    mode: ModifierMode,
    angle: Option<f64>,
    plane: Option<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntrySpec {
    name: String,
    kind: SemanticKind,
    #[serde(default)]
    forms: Vec<String>,
    #[serde(default)]
    coefficients: BTreeMap<String, f64>,
    axis: Option<BTreeMap<String, f64>>,
    pole: Option<String>,
    hyponym_of: Option<String>,
    lambda: Option<f64>,
    #[serde(default)]
    qualia: Vec<QualeSpec>,
    record_fields: Option<BTreeMap<String, String>>,
    degree_params: Option<DegreeSpec>,
    modifier: Option<ModifierSpec>,
    coerces: Option<Quale>,
    targets: Option<Quale>,
}

/// A loaded lexicon: the semantic space plus its entries.
#[derive(Debug, Clone)]
pub struct Lexicon {
    space: SemanticSpace,
    entries: Vec<LexicalEntry>,
    index: BTreeMap<String, usize>,
}

impl Lexicon {
    pub fn new(space: SemanticSpace) -> Self {
        Lexicon { space, entries: Vec::new(), index: BTreeMap::new() }
    }

    pub fn space(&self) -> &SemanticSpace {
        &self.space
    }

    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    /// Adds an entry; its name and forms become lookup keys (case-insensitive).
    pub fn insert(&mut self, entry: LexicalEntry) {
        let idx = self.entries.len();
        self.index.insert(entry.name.to_lowercase(), idx);
        for f in &entry.forms {
            self.index.entry(f.to_lowercase()).or_insert(idx);
        }
        self.entries.push(entry);
    }

    pub fn get(&self, name: &str) -> Result<&LexicalEntry> {
        self.lookup(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    /// Finds an entry by name or surface form.
    pub fn lookup(&self, word: &str) -> Option<&LexicalEntry> {
        self.index.get(&word.to_lowercase()).map(|&i| &self.entries[i])
    }

    pub fn entities(&self) -> impl Iterator<Item = &LexicalEntry> {
        self.entries.iter().filter(|e| e.kind == SemanticKind::Entity)
    }

    pub fn load(path: impl AsRef<Path>) -> std::result::Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| LexiconError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, LexiconError> {
        let file: LexiconFile = serde_json::from_str(text).map_err(|e| LexiconError::Schema {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let layout_err = |source: Error| LexiconError::Entry { line: line_of(text, "\"layout\""), name: "layout".into(), source };
        let dims: Vec<(Subspace, usize, i8)> = file.layout.subspaces.iter().map(|s| (s.name, s.dim, s.metric)).collect();
        let layout = SubspaceLayout::from_dims(&dims).map_err(layout_err)?;
        let mut space = SemanticSpace::build(layout, file.layout.max_grade).map_err(layout_err)?;
        if !file.roles.is_empty() {
            space.register_roles(&file.roles).map_err(layout_err)?;
        }
        if let Some([e, p]) = &file.layout.lift_axes {
            let ge = space.parse_generator(e).map_err(layout_err)?;
            let gp = space.parse_generator(p).map_err(layout_err)?;
            space.set_lift_axes(ge, gp).map_err(layout_err)?;
        }
        let mut lex = Lexicon::new(space);
        // hyponyms refer to their parents, so they are built after everything else
        let (plain, hyponyms): (Vec<_>, Vec<_>) = file.entries.iter().partition(|e| e.hyponym_of.is_none());
        let mut built: Vec<(usize, LexicalEntry)> = Vec::new();
        for spec in plain.into_iter().chain(hyponyms) {
            let pos = file.entries.iter().position(|e| std::ptr::eq(e, spec)).unwrap();
            let entry = lex.build_entry(spec).map_err(|source| LexiconError::Entry {
                line: entry_line(text, &spec.name),
                name: spec.name.clone(),
                source,
            })?;
            lex.insert(entry.clone());
            built.push((pos, entry));
        }
        // keep file order
        built.sort_by_key(|(p, _)| *p);
        let mut ordered = Lexicon::new(lex.space.clone());
        for (_, e) in built {
            ordered.insert(e);
        }
        Ok(ordered)
    }

    fn vector_from(&self, coeffs: &BTreeMap<String, f64>) -> Result<Multivector64> {
        let terms: Vec<(&str, f64)> = coeffs.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        self.space.element(&terms)
    }

    fn plane(&self, gens: &[String; 2]) -> Result<(Multivector64, (usize, usize))> {
        let a = self.space.parse_generator(&gens[0])?;
        let b = self.space.parse_generator(&gens[1])?;
        let alg = self.space.algebra();
        let plane = Multivector64::basis_vector(alg, a)?.wedge(&Multivector64::basis_vector(alg, b)?)?;
        if plane.is_zero_within(0.0) {
            return Err(Error::UnknownGenerator(format!("{}^{}", gens[0], gens[1])));
        }
        Ok((plane, (a, b)))
    }

    fn build_entry(&self, spec: &EntrySpec) -> Result<LexicalEntry> {
        let space = &self.space;
        let value = self.vector_from(&spec.coefficients)?;
        let mut entry = match spec.kind {
            SemanticKind::Entity => mk_entity(space, &spec.name, &value)?,
            SemanticKind::UnaryPred | SemanticKind::GradablePred if spec.hyponym_of.is_some() => {
                let parent = self.get(spec.hyponym_of.as_deref().unwrap())?;
                let lambda = spec.lambda.unwrap_or(DEFAULT_LAMBDA);
                let mut e = mk_hyponym(space, &spec.name, parent, lambda, &space.project(&value, Subspace::Entity))?;
                e.kind = spec.kind;
                e
            }
            SemanticKind::UnaryPred | SemanticKind::GradablePred => {
                let e_comp = space.project(&value, Subspace::Entity);
                let p_comp = &value - &e_comp;
                let mut e = mk_unary(space, &spec.name, &e_comp, &p_comp)?;
                e.kind = spec.kind;
                e
            }
            SemanticKind::PolarPred => {
                let axis = self.vector_from(spec.axis.as_ref().ok_or(Error::NonPositiveAxis)?)?;
                let (p, n) = mk_polar_pair(space, &spec.name, &spec.name, &axis)?;
                match spec.pole.as_deref() {
                    Some("+") | None => p,
                    Some("-") => n,
                    Some(other) => return Err(Error::Model(format!("pole must be + or -, got `{other}`"))),
                }
            }
            SemanticKind::BinaryRel => mk_relation(space, &spec.name, &value)?,
            SemanticKind::RoleKey => {
                let e = LexicalEntry::new(spec.name.clone(), SemanticKind::RoleKey, space.role_key(&spec.name)?);
                e.validate(space)?;
                e
            }
            kind => {
                let e = LexicalEntry::new(spec.name.clone(), kind, value);
                e.validate(space)?;
                e
            }
        };
        if spec.kind == SemanticKind::GradablePred && spec.degree_params.is_none() {
            return Err(Error::NotGradable(spec.name.clone()));
        }
        if let Some(d) = &spec.degree_params {
            if spec.kind != SemanticKind::GradablePred {
                return Err(Error::NotGradable(spec.name.clone()));
            }
            let prototype = match &d.prototype {
                Some(p) => Some((self.plane(&p.plane)?.0, p.angle)),
                None => None,
            };
            entry.degree_params = Some(DegreeParams { threshold: d.threshold, very: d.very, slightly: d.slightly, prototype });
        }
        for q in &spec.qualia {
            let (plane, generators) = self.plane(&q.plane)?;
            let qr = QualeRotor { quale: q.quale, plane, generators, angle: q.angle };
            qr.rotor()?;
            entry.qualia.insert(q.quale, qr);
        }
        if let Some(fields) = &spec.record_fields {
            let rt = RecordType::new(fields.clone())?;
            entry.record_type = Some(match &entry.record_type {
                // hyponyms inherit the parent's fields
                Some(inherited) => fields.iter().fold(inherited.clone(), |acc, (k, v)| acc.refine(k, v)),
                None => rt,
            });
        }
        if let Some(m) = &spec.modifier {
            let plane = match &m.plane {
                Some(p) => Some(self.plane(p)?.0),
                None => None,
            };
            entry.modifier = Some(Modifier { mode: m.mode, angle: m.angle, plane });
        }
        entry.forms = spec.forms.clone();
        entry.coerces = spec.coerces;
        entry.targets = spec.targets;
        Ok(entry)
    }
}

fn line_of(text: &str, needle: &str) -> usize {
    text.find(needle).map_or(0, |i| text[..i].matches('\n').count() + 1)
}

fn entry_line(text: &str, name: &str) -> usize {
    for pat in [format!("\"name\": \"{name}\""), format!("\"name\":\"{name}\"")] {
        let l = line_of(text, &pat);
        if l > 0 {
            return l;
        }
    }
    0
}
