use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while configuring or running the optimizer.
#[derive(Debug, Error)]
pub enum GemError {
    /// Invalid configuration: bad dimensions, unknown names, out-of-range parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// The objective or a constraint produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A run aborted at a given iteration.
    #[error("run failed at iteration {iteration}: {source}")]
    Run {
        iteration: usize,
        #[source]
        source: Box<GemError>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl GemError {
    pub fn config(msg: impl Into<String>) -> Self {
        GemError::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        GemError::Io {
            path: path.into(),
            source,
        }
    }

    /// True when the error stems from configuration rather than from a run.
    pub fn is_config(&self) -> bool {
        matches!(self, GemError::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, GemError>;
