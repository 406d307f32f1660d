//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("values from incomparable fields Q(sqrt {0}) and Q(sqrt {1})")]
    IncomparableFields(u64, u64),
    #[error("radicand {0} is too large to normalise")]
    RadicandTooLarge(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("direction is unbounded on the polyhedron")]
    UnboundedDirection,
    #[error("the cut family defines an empty region")]
    EmptyClosure,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("sequence does not converge conically")]
    NoConvergence,
    #[error("search budget exceeded")]
    SearchBudgetExceeded,
    #[error("dimension {dim} exceeds the configured bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("iteration limit {0} exceeded")]
    Exceeded(usize),
    #[error("integer hull facets still change after enlarging the box")]
    UnstableBox,
    #[error("no two cuts share a vertex and a fractional part")]
    NoBucket,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("body is certified at radius {0}")]
    CertifiedInstead(usize),
    #[error("no approximant found within budget")]
    ApproximationBudget,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("direction is rational, V_pi is trivial")]
    DegenerateDirection,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
