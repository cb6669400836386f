use fga_kernel::KernelError;
use thiserror::Error;

use crate::space::Subspace;
use crate::typecheck::IllTyped;

/// Errors from the semantic layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("subspace ranges overlap or leave gaps")]
    OverlappingRanges,
    #[error("layout needs {0} generators; at most 16 are available")]
    DimensionBudgetExceeded(usize),
    #[error("generator ranges must be ordered positive, negative, null")]
    SignatureOrder,
    #[error("unknown generator name `{0}`")]
    UnknownGenerator(String),
    #[error("zero vector given for `{0}`")]
    ZeroVector(String),
    #[error("`{name}` has support {found:?}, expected within {allowed:?}")]
    SupportViolation { name: String, found: Vec<Subspace>, allowed: Vec<Subspace> },
    #[error("`{name}` has grades {found:?}, expected {expected:?}")]
    GradeViolation { name: String, found: Vec<usize>, expected: Vec<usize> },
    #[error("{requested} role keys requested but the role space has dimension {available}")]
    RoleBudgetExceeded { requested: usize, available: usize },
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("polar axis must be a unit vector with positive square")]
    NonPositiveAxis,
    #[error("hyponymy factor {0} outside (0, 1]")]
    LambdaOutOfRange(f64),
    #[error("record type has no field `{0}`")]
    MissingField(String),
    #[error("blade is null")]
    NullBlade,
    #[error("unknown lexical entry `{0}`")]
    UnknownEntry(String),
    #[error("`{entry}` has no {quale} quale")]
    MissingQuale { entry: String, quale: String },
    #[error("`{entry}` has no grade-{grade} {quale} component")]
    EmptyGradeComponent { entry: String, quale: String, grade: usize },
    #[error("hyperbolic modification needs a form-telic plane spanning one positive and one negative generator")]
    SignatureMismatch,
    #[error("negation needs a grade-1 predicate or a polar idempotent")]
    UnrecognizedShape,
    #[error("`{0}` is not a gradable predicate")]
    NotGradable(String),
    #[error("cannot compare along different predicates `{0}` and `{1}`")]
    CrossDimensionalComparison(String, String),
    #[error("quantification needs a model")]
    ModelRequired,
    #[error("grade underflow: {probes} probes on a grade-{grade} element")]
    GradeUnderflow { grade: usize, probes: usize },
    #[error("template has valence {expected} but {got} arguments were given")]
    ArityMismatch { expected: usize, got: usize },
    #[error("type-raising axes are not configured for this space")]
    AxesUnconfigured,
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("operands have dimensions {0} and {1}")]
    DimMismatch(usize, usize),
    #[error("{op} expects {expected}, got {found}")]
    GradeMismatch { op: &'static str, expected: String, found: String },
    #[error("type error: {0}")]
    Type(IllTyped),
    #[error("wrong entry kind for `{name}`: expected {expected}")]
    KindMismatch { name: String, expected: String },
    #[error("model: {0}")]
    Model(String),
    #[error("model file, line {line}, column {column}: {message}")]
    ModelSchema { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
