use thiserror::Error;
use zetasym::error::Error as CoreError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Output(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                CoreError::PoleAtOne
                | CoreError::PoleAtNonPositiveInteger(_)
                | CoreError::PoleAtEndpoint(_)
                | CoreError::PoleEncountered(_)
                | CoreError::PrecisionLoss { .. }
                | CoreError::StepTooCoarse { .. }
                | CoreError::NonConvergence(_)
                | CoreError::CasimirMismatch { .. }
                | CoreError::NotAnEigenvector(_) => EXIT_NUMERICAL,
                // a failed precondition check is a verified answer, not a misuse
                CoreError::NotAZero { .. } => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
