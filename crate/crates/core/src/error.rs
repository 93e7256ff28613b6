use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter vector: {0}")]
    InvalidParams(String),

    #[error("lower central series stabilises at {series:?} without reaching zero")]
    NotNilpotent { series: Vec<usize> },

    #[error("invalid adapted pair: {0}")]
    InvalidPair(String),

    #[error("index {index} out of range (valid {lo}..={hi})")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("constraints at degree {degree} are not affine in the remaining unknowns")]
    NonAffineConstraint { degree: usize },

    #[error("no isomorphism with the requested adapted pair")]
    NotFound,

    #[error("denominator vanishes while evaluating {expr}")]
    DenominatorZero { expr: String },

    #[error("parameters do not lie in the generic stratum U_1")]
    NotInU1,

    #[error("no stratum of dimension {dim} matches the parameters")]
    Unclassifiable { dim: usize },

    #[error("dimension {0} is not covered by the registry")]
    UnsupportedDimension(usize),

    #[error("unknown stratum {id} in dimension {dim}")]
    UnknownStratum { dim: usize, id: String },

    #[error("cannot reconstruct representative of {id}: {reason}")]
    ReconstructionFailure { id: String, reason: String },

    #[error("registry: {0}")]
    Registry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
