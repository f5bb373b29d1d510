use thiserror::Error;

/// Exit code for malformed input or a violated matrix invariant.
pub const EXIT_INVALID: i32 = 2;
/// Exit code when an enumeration guard refuses the job.
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Core(#[from] ncsphere_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                ncsphere_core::Error::EnumerationBound { .. }
                | ncsphere_core::Error::GuardExceeded { .. },
            ) => EXIT_BOUND,
            _ => EXIT_INVALID,
        }
    }
}
