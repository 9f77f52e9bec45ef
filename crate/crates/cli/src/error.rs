use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(casimir_core::Error),

    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 0 success, 2 usage, 3 numerical failure, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<casimir_core::Error> for CliError {
    fn from(e: casimir_core::Error) -> Self {
        match e {
            casimir_core::Error::Domain(msg) => CliError::Usage(msg),
            other => CliError::Numerical(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
