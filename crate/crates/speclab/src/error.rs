//! Crate-wide error type. Module-specific failures convert into this.

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Quad(#[from] crate::quad::QuadError),

    #[error(transparent)]
    Beurling(#[from] crate::beurling::BeurlingError),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit-code class per the CLI contract: usage/input problems are 2,
    /// everything else surfaces as a verification failure (1).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Io(_) | Error::Json(_) | Error::Domain(_) => 2,
            _ => 1,
        }
    }
}
