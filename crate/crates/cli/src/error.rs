//! CLI error domains mapped to process exit codes.

use thiserror::Error;

/// Exit codes: 0 success, 1 verification failure, 2 usage, 3 budget overrun.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("wall-clock budget exceeded: {0}")]
    Budget(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verification(_) => 1,
            CliError::Io(_) => 1,
        }
    }
}
