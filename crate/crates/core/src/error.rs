use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("retries exhausted: {0}")]
    RetryExhausted(String),
    #[error("search exhausted without a result: {0}")]
    NotFound(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("resampling did not terminate within {cap} steps: {detail}")]
    NonTermination { cap: u64, detail: String },
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
