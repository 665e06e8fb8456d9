use thiserror::Error;

use toricstab_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or invalid user input. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// A certificate or internal consistency check failed. Exit code 3.
    #[error("{0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// Maps a core error, prefixing the context it arose in.
    pub fn from_core(context: &str, e: CoreError) -> Self {
        let msg = format!("{context}: {e}");
        match e {
            CoreError::Certificate(_)
            | CoreError::InconsistentM1(_)
            | CoreError::InfeasibleSlice => CliError::Internal(msg),
            _ => CliError::Input(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
