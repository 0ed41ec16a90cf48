use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied something that violates a documented precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// An exhaustive procedure was asked to run beyond its configured limit.
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// A quantity is mathematically undefined for the given input.
    #[error("undefined: {0}")]
    Undefined(String),

    #[error("malformed {kind} at line {line}: {msg}")]
    Parse {
        kind: &'static str,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    /// An internal invariant failed. Reaching this is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by configuration or I/O rather than by a
    /// failed check. The CLI maps these to exit code 2.
    pub fn is_config_or_io(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
