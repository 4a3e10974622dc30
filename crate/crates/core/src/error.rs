use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing file: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("malformed row in {file}:{line}: {reason}")]
    MalformedRow {
        file: String,
        line: u64,
        reason: String,
    },

    #[error("schema violation: {0}")]
    SchemaViolation(String),

    #[error("integrity violation: {0}")]
    IntegrityViolation(String),

    #[error("invalid threshold {0}: must be >= 1")]
    InvalidThreshold(u32),

    #[error("malformed NET file at line {line}: {reason}")]
    MalformedNet { line: usize, reason: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("unknown stop: {0}")]
    UnknownStop(String),

    #[error("unknown route: {0}")]
    UnknownRoute(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("snapshot {label}: {source}")]
    Snapshot {
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach the snapshot label to an error raised while processing one feed.
    pub fn in_snapshot(self, label: &str) -> Self {
        Error::Snapshot {
            label: label.to_string(),
            source: Box::new(self),
        }
    }

    /// True for errors caused by user input rather than the environment.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Io { .. } => false,
            Error::Snapshot { source, .. } => source.is_input_error(),
            _ => true,
        }
    }
}
