use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CsmaError>;

#[derive(Debug, Error)]
pub enum CsmaError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("run failed for {function} / {optimizer} / run {run}: {source}")]
    RunFailed {
        function: String,
        optimizer: String,
        run: usize,
        #[source]
        source: Box<CsmaError>,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error on {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl CsmaError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CsmaError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        CsmaError::Json {
            path: path.into(),
            source,
        }
    }
}
