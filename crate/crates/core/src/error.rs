use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Hypothesis` is kept distinct from the other variants because callers (in
/// particular the CLI) map it to a dedicated exit status: a well-formed input
/// that falls outside the stated validity conditions of a closed formula is
/// not the same failure as a malformed input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("filling does not match shape: {0}")]
    ShapeMismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("polynomial contains b-variable with index {0} <= 0; apply star first")]
    SignedBIndex(i64),

    #[error("matrix is not square")]
    NotSquare,

    #[error("pfaffian needs an even-dimensional matrix, got {0}")]
    OddDimension(usize),

    #[error("matrix is not skew-symmetric at entry ({0},{1})")]
    NotSkewSymmetric(usize, usize),

    #[error("paths intersect at vertex ({0},{1})")]
    IntersectingPaths(i64, i64),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),
}

pub type Result<T> = std::result::Result<T, Error>;
