use fga_kernel::Multivector64;

use crate::error::{Error, Result};
use crate::lexicon::LexicalEntry;
use crate::space::{SemanticSpace, Subspace, EPS_NUM, EPS_ZERO};
use crate::types::SemanticKind;

/// Negation by predicate shape: `-P` for grade-1 predicates, `1 - P` for idempotents.
pub fn negate(p: &Multivector64) -> Result<Multivector64> {
    let scale = p.max_abs().max(1.0);
    if p.homogeneous_grade(EPS_ZERO * scale) == Some(1) {
        return Ok(-p);
    }
    let pp = p.gp(p)?;
    if !p.is_zero_within(EPS_NUM) && pp.approx_eq(p, EPS_NUM) {
        return Ok(Multivector64::one(p.algebra()) - p);
    }
    Err(Error::UnrecognizedShape)
}

fn gradable(t: &LexicalEntry) -> Result<()> {
    if t.kind == SemanticKind::GradablePred {
        Ok(())
    } else {
        Err(Error::NotGradable(t.name.clone()))
    }
}

/// `T_E · (a - b)`; positive iff `a` has more of the property than `b`. No threshold is used.
pub fn compare(space: &SemanticSpace, t: &LexicalEntry, a: &LexicalEntry, b: &LexicalEntry) -> Result<f64> {
    gradable(t)?;
    let te = space.project(&t.value, Subspace::Entity);
    Ok(te.scalar_product(&(&a.value - &b.value))?)
}

/// Comparison where each argument is measured along its own predicate; only the
/// same predicate is accepted.
pub fn compare_along(
    space: &SemanticSpace,
    t_a: &LexicalEntry,
    a: &LexicalEntry,
    t_b: &LexicalEntry,
    b: &LexicalEntry,
) -> Result<f64> {
    if t_a.name != t_b.name {
        return Err(Error::CrossDimensionalComparison(t_a.name.clone(), t_b.name.clone()));
    }
    compare(space, t_a, a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjunctionMode {
    /// `min(x, y)` on truth degrees.
    Boolean,
    /// `½(x + y)` on predicates.
    Average,
    /// `x ∧ y` on predicates.
    Wedge,
}

fn grade_of(m: &Multivector64) -> Option<usize> {
    if m.is_zero_within(EPS_ZERO) {
        return Some(0);
    }
    m.homogeneous_grade(EPS_ZERO * m.max_abs().max(1.0))
}

/// Conjunction in one of three modes; operands of the wrong grade are rejected.
pub fn conjoin(x: &Multivector64, y: &Multivector64, mode: ConjunctionMode) -> Result<Multivector64> {
    let (gx, gy) = (grade_of(x), grade_of(y));
    let mismatch = |expected: &str| Error::GradeMismatch {
        op: "conjunction",
        expected: expected.to_string(),
        found: format!("{gx:?} and {gy:?}"),
    };
    match mode {
        ConjunctionMode::Boolean => {
            if gx != Some(0) || gy != Some(0) {
                return Err(mismatch("two truth degrees (grade 0)"));
            }
            Ok(Multivector64::scalar(x.algebra(), x.scalar_part().min(y.scalar_part())))
        }
        ConjunctionMode::Average | ConjunctionMode::Wedge => {
            if gx != Some(1) || gy != Some(1) {
                return Err(mismatch("two predicates (grade 1)"));
            }
            if mode == ConjunctionMode::Average {
                Ok((x + y).scale(0.5))
            } else {
                Ok(x.wedge(y)?)
            }
        }
    }
}
