use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched degrees, malformed permutations and similar shape errors.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The request is valid but exceeds what the engine can do exhaustively.
    #[error("capability error: {0}")]
    Capability(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A self-check failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
