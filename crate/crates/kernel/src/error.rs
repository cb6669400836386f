use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("algebra dimension {0} is outside 1..=16")]
    InvalidDimension(usize),
    #[error("full storage is limited to n <= 12; n = {n} needs a grade truncation below {n}")]
    TruncationRequired { n: usize },
    #[error("grade {grade} exceeds the stored maximum {max}")]
    GradeOutOfRange { grade: usize, max: usize },
    #[error("generator index {index} out of range for dimension {dim}")]
    GeneratorOutOfRange { index: usize, dim: usize },
    #[error("operands belong to different algebras")]
    SignatureMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("product has a nonzero grade-{grade} part above the truncation")]
    TruncationOverflow { grade: usize },
    #[error("multivector is not invertible: {0}")]
    NotInvertible(&'static str),
    #[error("bivector is not simple (its square has a non-scalar part)")]
    NonSimpleBivector,
    #[error("expected a homogeneous grade-2 element")]
    NotABivector,
    #[error("not a unit rotor: |R R~ - 1| = {deviation:e}")]
    InvalidRotor { deviation: f64 },
}

pub type Result<T> = std::result::Result<T, KernelError>;
