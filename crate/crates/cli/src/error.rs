use std::path::Path;
use std::process::ExitCode;

use mcgdensity_core::Error;

/// Failures with their exit codes: 1 verification, 2 precondition, 3 cap.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("resource cap reached: {0}")]
    ResourceCap(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verify(_) => 1,
            CliError::Config(_) | CliError::Precondition(_) | CliError::Io(_) => 2,
            CliError::ResourceCap(_) => 3,
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CurveTooLarge(_) => CliError::ResourceCap(e.to_string()),
            Error::InvalidConfig(m) => CliError::Config(m),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
