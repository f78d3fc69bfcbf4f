use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while building or executing a pipeline.
#[derive(Debug, Error)]
pub enum StreamError {
    /// A terminal operation already ran on this pipeline, or it was chained into another one.
    #[error("stream has already been operated upon or consumed")]
    AlreadyConsumed,

    #[error("file not found: {}", path.display())]
    FileNotFound { path: PathBuf },

    #[error("permission denied: {}", path.display())]
    PermissionDenied { path: PathBuf },

    #[error("cannot open {}: {source}", path.display())]
    Open { path: PathBuf, source: io::Error },

    #[error("error reading {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("{}:{line}: line is not valid UTF-8", path.display())]
    InvalidEncoding { path: PathBuf, line: u64 },
}

impl StreamError {
    pub(crate) fn from_open(path: PathBuf, err: io::Error) -> Self {
        match err.kind() {
            io::ErrorKind::NotFound => StreamError::FileNotFound { path },
            io::ErrorKind::PermissionDenied => StreamError::PermissionDenied { path },
            _ => StreamError::Open { path, source: err },
        }
    }
}

pub type Result<T, E = StreamError> = std::result::Result<T, E>;
