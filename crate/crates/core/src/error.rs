use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the library funnels
/// into one of these variants so the CLI can map them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has no nonzero singular value")]
    NoNonzeroSingularValue,

    #[error("affine system Ax = b is inconsistent")]
    InfeasibleAffine,

    #[error("polyhedron is empty")]
    InfeasibleSet,

    #[error("instance too large for the enumeration oracle: {0}")]
    InstanceTooLarge(String),

    #[error("point is not on the affine subspace")]
    NotOnAffine,

    #[error("optimal solution is not unique on the requested side")]
    NotUnique,

    #[error("quantity is not applicable here: {0}")]
    NotApplicable(&'static str),

    #[error("assumption violated: {0}")]
    AssumptionViolation(String),

    #[error("primal problem is unbounded below")]
    UnboundedPrimal,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("instance generation failed: {0}")]
    GenerationFailed(String),

    #[error("function evaluation produced a non-finite value")]
    EvaluationError,

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
