use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("frequency grid of {grid} points aliases an ACF with support {support} (need at least {})", 2 * .support + 1)]
    Aliasing { support: usize, grid: usize },

    #[error("matrix at grid index {index} is ill-conditioned (min eigenvalue {min_eigenvalue:e})")]
    Conditioning { index: usize, min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("oracle size {size} exceeds the limit of {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by user-supplied parameters or files rather than
    /// by a failed numerical check.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::Aliasing { .. }
                | Error::DimensionMismatch { .. }
                | Error::Domain(_)
                | Error::InvalidConfiguration(_)
                | Error::OracleTooLarge { .. }
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
