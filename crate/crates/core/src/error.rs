use thiserror::Error;

/// Errors raised by the library. Negative mathematical outcomes (a non-affine
/// witness, a colliding pair, a violated hypothesis) are returned as values,
/// not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring {0} is infinite and cannot be enumerated")]
    NotEnumerable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain too large: {0}")]
    TooLarge(String),

    #[error("inconsistent: {0}")]
    Inconsistent(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing point {0}")]
    MissingPoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
