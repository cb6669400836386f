use std::fmt;

use fga_kernel::Multivector64;

use crate::lexicon::LexicalEntry;
use crate::space::EPS_ZERO;
use crate::types::SemanticKind;

/// Composition operators the checker understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionOp {
    /// `a ⌟ b`
    LeftContraction,
    /// `a ⌞ b`
    RightContraction,
    /// `a ∧ b`
    Wedge,
}

impl fmt::Display for CompositionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionOp::LeftContraction => "⌟",
            CompositionOp::RightContraction => "⌞",
            CompositionOp::Wedge => "∧",
        })
    }
}

/// Why a composition is rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IllTyped {
    /// Grade arithmetic fails, e.g. contracting a higher grade into a lower one.
    GradeUnderflow { left: usize, right: usize },
    /// A zero operand has no grade.
    NoGrade,
    /// The contraction is algebraically zero.
    VanishingContraction,
    /// The wedge lands on a grade with no interpretation for these operand kinds.
    IncoherentGrade(usize),
}

impl fmt::Display for IllTyped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IllTyped::GradeUnderflow { left, right } => write!(f, "grade underflow ({left} vs {right})"),
            IllTyped::NoGrade => write!(f, "operand has no grade"),
            IllTyped::VanishingContraction => write!(f, "vanishing contraction"),
            IllTyped::IncoherentGrade(g) => write!(f, "incoherent grade {g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeVerdict {
    WellTyped(usize),
    IllTyped(IllTyped),
}

impl TypeVerdict {
    pub fn is_well_typed(&self) -> bool {
        matches!(self, TypeVerdict::WellTyped(_))
    }
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeVerdict::WellTyped(g) => write!(f, "well-typed, grade {g}"),
            TypeVerdict::IllTyped(r) => write!(f, "ill-typed: {r}"),
        }
    }
}

fn top_grade(m: &Multivector64) -> Option<usize> {
    m.grades(EPS_ZERO * m.max_abs().max(1.0)).last().copied()
}

fn coherent_wedge(a: SemanticKind, b: SemanticKind) -> bool {
    use SemanticKind::*;
    let pred = |k: SemanticKind| matches!(k, UnaryPred | GradablePred);
    matches!((a, b), (RoleKey, Entity) | (Entity, RoleKey) | (RoleKey, RoleKey) | (Entity, Entity))
        || (pred(a) && pred(b))
        || matches!((a, b), (BinaryRel, Entity) | (Entity, BinaryRel))
}

/// Three-layer check on raw values with their kinds: grade arithmetic, then
/// contraction non-vanishing, then wedge coherence. Returns the first failure.
pub fn check_values(
    left: &Multivector64,
    left_kind: SemanticKind,
    op: CompositionOp,
    right: &Multivector64,
    right_kind: SemanticKind,
) -> TypeVerdict {
    let (Some(gl), Some(gr)) = (top_grade(left), top_grade(right)) else {
        return TypeVerdict::IllTyped(IllTyped::NoGrade);
    };
    let result_grade = match op {
        CompositionOp::LeftContraction if gl <= gr => gr - gl,
        CompositionOp::RightContraction if gl >= gr => gl - gr,
        CompositionOp::Wedge => gl + gr,
        _ => return TypeVerdict::IllTyped(IllTyped::GradeUnderflow { left: gl, right: gr }),
    };
    match op {
        CompositionOp::LeftContraction | CompositionOp::RightContraction => {
            let result = match op {
                CompositionOp::LeftContraction => left.lc(right),
                _ => left.rc(right),
            };
            let Ok(result) = result else {
                return TypeVerdict::IllTyped(IllTyped::NoGrade);
            };
            let scale = left.coefficient_norm() * right.coefficient_norm();
            if result.coefficient_norm() <= EPS_ZERO * scale {
                return TypeVerdict::IllTyped(IllTyped::VanishingContraction);
            }
        }
        CompositionOp::Wedge => {
            if !coherent_wedge(left_kind, right_kind) {
                return TypeVerdict::IllTyped(IllTyped::IncoherentGrade(result_grade));
            }
        }
    }
    TypeVerdict::WellTyped(result_grade)
}

/// Checks `left op right` for two lexical entries.
pub fn check_type(left: &LexicalEntry, op: CompositionOp, right: &LexicalEntry) -> TypeVerdict {
    check_values(&left.value, left.kind, op, &right.value, right.kind)
}
