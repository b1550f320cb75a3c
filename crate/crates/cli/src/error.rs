//! CLI error type and its mapping to process exit codes.

use std::path::PathBuf;

use thiserror::Error;

/// Exit code for a rejected configuration.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit code when some grid points failed but the run completed.
pub const EXIT_PARTIAL: u8 = 3;
/// Exit code for I/O and other runtime failures.
pub const EXIT_RUNTIME: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] mv_awgn::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("manifest {path}: {source}")]
    Manifest {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) | Self::Core(mv_awgn::Error::InvalidArgument(_)) => EXIT_VALIDATION,
            _ => EXIT_RUNTIME,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
