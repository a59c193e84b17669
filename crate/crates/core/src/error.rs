use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
///
/// Failing identity checks are never errors: checkers return reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("shuffle split {k} out of range for n = {n}")]
    ShuffleOutOfRange { k: usize, n: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("graded space mismatch")]
    SpaceMismatch,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operation of arity {0} is not available")]
    MissingArity(usize),
    #[error("value assigned to a tuple killed by graded antisymmetry: {0:?}")]
    KilledTuple(Vec<usize>),
    #[error("differential does not square to zero")]
    NotAComplex,
    #[error("input is not a valid differential graded Lie algebra")]
    InvalidDgla,
    #[error("input is not a valid differential graded associative algebra")]
    InvalidDga,
    #[error("invalid coefficient algebra: {0}")]
    InvalidAlgebra(String),
    #[error("element is not nilpotent: it has a component along the unit")]
    NotNilpotent,
    #[error("series is not a Maurer-Cartan element through order {0}")]
    NotMaurerCartan(usize),
    #[error("Hodge data does not match the algebra")]
    HodgeMismatch,
    #[error("parameter frame does not match the Hodge data")]
    FrameMismatch,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
