use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use fga_kernel::{Algebra, BasisBlade, Multivector64, Signature};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The direct summands of the meaning space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subspace {
    Entity,
    Predicate,
    Role,
    State,
    Control,
}

impl Subspace {
    pub const ALL: [Subspace; 5] =
        [Subspace::Entity, Subspace::Predicate, Subspace::Role, Subspace::State, Subspace::Control];

    /// Generator name prefix: `e1`, `f1`, `r1`, `s1`, `c1`.
    pub fn prefix(self) -> &'static str {
        match self {
            Subspace::Entity => "e",
            Subspace::Predicate => "f",
            Subspace::Role => "r",
            Subspace::State => "s",
            Subspace::Control => "c",
        }
    }

    pub fn letter(self) -> char {
        match self {
            Subspace::Entity => 'E',
            Subspace::Predicate => 'P',
            Subspace::Role => 'R',
            Subspace::State => 'S',
            Subspace::Control => 'C',
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Formats a support set as `{E,P}`.
pub fn fmt_support(s: &BTreeSet<Subspace>) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.letter().to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// One subspace and the kernel generators it owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRange {
    pub subspace: Subspace,
    pub range: Range<usize>,
    /// Square of every generator in the range: +1, -1 or 0.
    pub metric: i8,
}

/// Assignment of subspaces to generator ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceLayout {
    ranges: Vec<SubspaceRange>,
}

impl SubspaceLayout {
    /// Explicit ranges. They must be disjoint, cover `[0, n)` and respect the
    /// kernel's positive/negative/null generator order.
    pub fn new(mut ranges: Vec<SubspaceRange>) -> Result<Self> {
        ranges.retain(|r| !r.range.is_empty());
        let mut seen = BTreeSet::new();
        for r in &ranges {
            if !seen.insert(r.subspace) {
                return Err(Error::OverlappingRanges);
            }
        }
        let mut sorted = ranges.clone();
        sorted.sort_by_key(|r| r.range.start);
        let mut next = 0;
        for r in &sorted {
            if r.range.start != next {
                return Err(Error::OverlappingRanges);
            }
            next = r.range.end;
        }
        if next > Signature::MAX_DIM {
            return Err(Error::DimensionBudgetExceeded(next));
        }
        let class = |m: i8| match m {
            1 => 0,
            -1 => 1,
            _ => 2,
        };
        if sorted.windows(2).any(|w| class(w[0].metric) > class(w[1].metric)) {
            return Err(Error::SignatureOrder);
        }
        Ok(SubspaceLayout { ranges })
    }

    /// Ranges from dimensions, assigned positive first, then negative, then null,
    /// keeping the given order within each class.
    pub fn from_dims(dims: &[(Subspace, usize, i8)]) -> Result<Self> {
        let total: usize = dims.iter().map(|d| d.1).sum();
        if total > Signature::MAX_DIM {
            return Err(Error::DimensionBudgetExceeded(total));
        }
        let mut ranges = Vec::new();
        let mut next = 0;
        for class in [1i8, -1, 0] {
            for &(s, d, m) in dims.iter().filter(|d| d.2 == class) {
                ranges.push(SubspaceRange { subspace: s, range: next..next + d, metric: m });
                next += d;
            }
        }
        Self::new(ranges)
    }

    /// Default Euclidean layout with `V_E`, `V_P`, `V_R` of the given sizes.
    pub fn euclidean(entity: usize, predicate: usize, role: usize) -> Result<Self> {
        Self::from_dims(&[(Subspace::Entity, entity, 1), (Subspace::Predicate, predicate, 1), (Subspace::Role, role, 1)])
    }

    pub fn ranges(&self) -> &[SubspaceRange] {
        &self.ranges
    }

    pub fn dim(&self) -> usize {
        self.ranges.iter().map(|r| r.range.len()).sum()
    }

    pub fn get(&self, s: Subspace) -> Option<&SubspaceRange> {
        self.ranges.iter().find(|r| r.subspace == s)
    }

    pub fn subspace_dim(&self, s: Subspace) -> usize {
        self.get(s).map_or(0, |r| r.range.len())
    }

    pub fn subspace_of(&self, generator: usize) -> Option<Subspace> {
        self.ranges.iter().find(|r| r.range.contains(&generator)).map(|r| r.subspace)
    }

    pub fn signature(&self) -> Result<Signature> {
        let count = |m: i8| self.ranges.iter().filter(|r| r.metric == m).map(|r| r.range.len()).sum::<usize>();
        Ok(Signature::new(count(1), count(-1), self.dim() - count(1) - count(-1))?)
    }
}

/// Default relative tolerance for nullity-based type errors.
pub const EPS_ZERO: f64 = 1e-7;
/// Default numeric equality tolerance.
pub const EPS_NUM: f64 = 1e-9;

/// A meaning space: an algebra partitioned into typed subspaces, plus the
/// role-key registry and the optional type-raising axes.
#[derive(Debug, Clone)]
pub struct SemanticSpace {
    alg: Algebra,
    layout: SubspaceLayout,
    roles: Vec<String>,
    lift_axes: Option<(usize, usize)>,
}

impl SemanticSpace {
    /// Stores every grade when `n <= 12`; otherwise `max_grade` must be given.
    pub fn build(layout: SubspaceLayout, max_grade: Option<usize>) -> Result<Self> {
        let sig = layout.signature()?;
        let n = sig.dim();
        let k = max_grade.unwrap_or(if n <= fga_kernel::FULL_STORAGE_LIMIT { n } else { 4 });
        let alg = Algebra::new(sig, k)?;
        Ok(SemanticSpace { alg, layout, roles: Vec::new(), lift_axes: None })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn layout(&self) -> &SubspaceLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// Kernel index of the `i`-th (0-based) generator of subspace `s`.
    pub fn generator(&self, s: Subspace, i: usize) -> Result<usize> {
        let r = self.layout.get(s).ok_or_else(|| Error::UnknownGenerator(format!("{}{}", s.prefix(), i + 1)))?;
        if i >= r.range.len() {
            return Err(Error::UnknownGenerator(format!("{}{}", s.prefix(), i + 1)));
        }
        Ok(r.range.start + i)
    }

    /// Parses names such as `e3` or `f1`.
    pub fn parse_generator(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        let s = Subspace::ALL
            .into_iter()
            .find(|s| name.starts_with(s.prefix()))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let i: usize = name[1..].parse().map_err(|_| Error::UnknownGenerator(name.to_string()))?;
        if i == 0 {
            return Err(Error::UnknownGenerator(name.to_string()));
        }
        self.generator(s, i - 1).map_err(|_| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator_name(&self, g: usize) -> String {
        match self.layout.ranges.iter().find(|r| r.range.contains(&g)) {
            Some(r) => format!("{}{}", r.subspace.prefix(), g - r.range.start + 1),
            None => format!("g{}", g + 1),
        }
    }

    /// Parses a blade such as `e1^f2` (or `1` for the scalar) into a signed basis blade.
    pub fn parse_blade(&self, text: &str) -> Result<(f64, BasisBlade)> {
        let text = text.trim();
        if text == "1" {
            return Ok((1.0, BasisBlade::SCALAR));
        }
        let gens = text.split('^').map(|g| self.parse_generator(g)).collect::<Result<Vec<_>>>()?;
        let mut uniq = gens.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != gens.len() {
            return Err(Error::UnknownGenerator(text.to_string()));
        }
        let (s, b) = BasisBlade::from_indices(&gens);
        Ok((s as f64, b))
    }

    pub fn blade_name(&self, b: BasisBlade) -> String {
        if b == BasisBlade::SCALAR {
            return "1".into();
        }
        b.indices().map(|g| self.generator_name(g)).collect::<Vec<_>>().join("^")
    }

    /// Renders the terms above `EPS_ZERO`, e.g. `0.8 e1 + 1 f3`; the zero element renders as `0`.
    pub fn format(&self, m: &Multivector64) -> String {
        let parts: Vec<String> = m
            .terms()
            .filter(|(_, c)| c.abs() > EPS_ZERO)
            .map(|(b, c)| {
                let c = (c * 1e6).round() / 1e6;
                if b == BasisBlade::SCALAR { format!("{c}") } else { format!("{c} {}", self.blade_name(b)) }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    /// Builds a multivector from named terms.
    pub fn element(&self, terms: &[(&str, f64)]) -> Result<Multivector64> {
        let mut out = Multivector64::zero(&self.alg);
        for (name, c) in terms {
            let (s, b) = self.parse_blade(name)?;
            out = out + Multivector64::blade(&self.alg, b, s * c)?;
        }
        Ok(out)
    }

    pub fn basis(&self, s: Subspace, i: usize) -> Result<Multivector64> {
        Ok(Multivector64::basis_vector(&self.alg, self.generator(s, i)?)?)
    }

    /// Subspaces whose generators appear in a blade with a coefficient above `EPS_ZERO`.
    pub fn support(&self, m: &Multivector64) -> BTreeSet<Subspace> {
        let tol = EPS_ZERO * m.max_abs().max(1.0);
        let mut out = BTreeSet::new();
        for (b, c) in m.terms() {
            if c.abs() > tol {
                for g in b.indices() {
                    if let Some(s) = self.layout.subspace_of(g) {
                        out.insert(s);
                    }
                }
            }
        }
        out
    }

    /// Keeps the blades lying entirely inside subspace `s` (the scalar part is dropped).
    pub fn project(&self, m: &Multivector64, s: Subspace) -> Multivector64 {
        m.filter_blades(|b| b.0 != 0 && b.indices().all(|g| self.layout.subspace_of(g) == Some(s)))
    }

    /// Registers role keys as consecutive basis vectors of `V_R`.
    pub fn register_roles<S: AsRef<str>>(&mut self, labels: &[S]) -> Result<()> {
        let available = self.layout.subspace_dim(Subspace::Role);
        if labels.len() > available {
            return Err(Error::RoleBudgetExceeded { requested: labels.len(), available });
        }
        self.roles = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Ok(())
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn role_key(&self, label: &str) -> Result<Multivector64> {
        let i = self.roles.iter().position(|r| r == label).ok_or_else(|| Error::UnknownRole(label.to_string()))?;
        self.basis(Subspace::Role, i)
    }

    pub fn role_generator(&self, label: &str) -> Option<usize> {
        let i = self.roles.iter().position(|r| r == label)?;
        self.generator(Subspace::Role, i).ok()
    }

    pub fn set_lift_axes(&mut self, entity_axis: usize, predicate_axis: usize) -> Result<()> {
        let sig = self.alg.signature();
        let ok = self.layout.subspace_of(entity_axis) == Some(Subspace::Entity)
            && self.layout.subspace_of(predicate_axis) == Some(Subspace::Predicate)
            && sig.square(entity_axis) == 1
            && sig.square(predicate_axis) == 1;
        if !ok {
            return Err(Error::AxesUnconfigured);
        }
        self.lift_axes = Some((entity_axis, predicate_axis));
        Ok(())
    }

    pub fn lift_axes(&self) -> Option<(usize, usize)> {
        self.lift_axes
    }

    /// Top-grade element `e1 e2 ... en`; only available when every grade is stored.
    pub fn pseudoscalar(&self) -> Result<Multivector64> {
        let n = self.dim();
        Ok(Multivector64::blade(&self.alg, BasisBlade((1u32 << n) - 1), 1.0)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_space() {
        let space = SemanticSpace::build(SubspaceLayout::euclidean(2, 2, 2).unwrap(), None).unwrap();
        let sig = space.algebra().signature();
        assert_eq!((sig.p(), sig.q(), sig.r()), (6, 0, 0));
        assert_eq!(space.parse_generator("f2").unwrap(), 3);
        assert_eq!(space.generator_name(4), "r1");
    }

    #[test]
    fn mixed_signature_orders_generators() {
        let layout =
            SubspaceLayout::from_dims(&[(Subspace::Entity, 2, 1), (Subspace::Predicate, 2, -1), (Subspace::Role, 1, 1)])
                .unwrap();
        let space = SemanticSpace::build(layout, None).unwrap();
        let sig = space.algebra().signature();
        assert_eq!((sig.p(), sig.q()), (3, 2));
        assert_eq!(space.parse_generator("r1").unwrap(), 2);
        assert_eq!(space.parse_generator("f1").unwrap(), 3);
    }

    #[test]
    fn overlapping_ranges() {
        let r = |s, a, b| SubspaceRange { subspace: s, range: a..b, metric: 1 };
        let err = SubspaceLayout::new(vec![r(Subspace::Entity, 0, 3), r(Subspace::Predicate, 2, 4)]).unwrap_err();
        assert_eq!(err, Error::OverlappingRanges);
        assert_eq!(SubspaceLayout::euclidean(8, 8, 4).unwrap_err(), Error::DimensionBudgetExceeded(20));
    }

    #[test]
    fn support_sets() {
        let space = SemanticSpace::build(SubspaceLayout::euclidean(2, 2, 2).unwrap(), None).unwrap();
        let j = space.element(&[("e1", 1.0)]).unwrap();
        let s = space.element(&[("e1", 0.5), ("f2", 0.3)]).unwrap();
        assert_eq!(space.support(&j), [Subspace::Entity].into());
        assert_eq!(space.support(&s), [Subspace::Entity, Subspace::Predicate].into());
        assert!(space.support(&Multivector64::zero(space.algebra())).is_empty());
    }

    #[test]
    fn role_keys_are_orthonormal() {
        let mut space = SemanticSpace::build(SubspaceLayout::euclidean(2, 2, 2).unwrap(), None).unwrap();
        space.register_roles(&["AG", "TH"]).unwrap();
        let (a, t) = (space.role_key("AG").unwrap(), space.role_key("TH").unwrap());
        assert_eq!(a.scalar_product(&t).unwrap(), 0.0);
        assert_eq!(a.scalar_product(&a).unwrap(), 1.0);
        assert!(matches!(space.register_roles(&["A", "B", "C"]), Err(Error::RoleBudgetExceeded { .. })));
    }
}
