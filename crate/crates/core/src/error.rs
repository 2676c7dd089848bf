//! Error type shared across the crate, with the CLI exit-code mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("no connected sample after {attempts} attempts; model parameters too sparse")]
    RetriesExhausted { attempts: usize },

    #[error("step size {alpha} outside stable range (0, {limit})")]
    AlphaOutOfRange { alpha: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("filter window length {degree} exceeds supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("moment table of order {have} too short; need at least order {need}")]
    InsufficientOrder { need: usize, have: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for config errors, 4 when connected-graph
    /// resampling gives up, 3 for everything that fails at run time.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidModel(_) | Error::DegreeTooLarge { .. } => 2,
            Error::RetriesExhausted { .. } => 4,
            _ => 3,
        }
    }
}
