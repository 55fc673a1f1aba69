use thiserror::Error;

use ternary_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Io(_) => 3,
            CliError::Json(_) | CliError::Csv(_) => 3,
            CliError::Core(e) => match e {
                CoreError::Io(_) => 3,
                CoreError::Invariant(_) | CoreError::Dimension(_) | CoreError::Reconstruction(_) | CoreError::NotCanonical => 2,
                _ => 1,
            },
        }
    }
}
