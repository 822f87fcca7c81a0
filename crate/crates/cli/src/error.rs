//! CLI error taxonomy mapped onto process exit codes.

use std::fmt;
use std::path::Path;

/// Exit codes: 0 success, 1 usage, 2 parse, 3 infeasible, 4 cap refusal.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Configuration or dataset failed to load; names the file and, when
    /// known, the line.
    Parse {
        file: String,
        line: Option<usize>,
        message: String,
    },
    Infeasible(String),
    CapExceeded(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Infeasible(_) => 3,
            CliError::CapExceeded(_) => 4,
        }
    }

    pub fn parse(file: &Path, message: impl Into<String>) -> Self {
        CliError::Parse {
            file: file.display().to_string(),
            line: None,
            message: message.into(),
        }
    }

    pub fn parse_at(file: &Path, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            file: file.display().to_string(),
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn from_core(err: fairsub_core::Error) -> Self {
        match err {
            fairsub_core::Error::Infeasible(msg) => CliError::Infeasible(msg),
            fairsub_core::Error::CapExceeded { what, n, cap } => {
                CliError::CapExceeded(format!("{what} = {n} exceeds cap {cap}"))
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Parse {
                file,
                line: Some(line),
                message,
            } => write!(f, "{file}:{line}: {message}"),
            CliError::Parse {
                file,
                line: None,
                message,
            } => write!(f, "{file}: {message}"),
            CliError::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            CliError::CapExceeded(msg) => write!(f, "refused: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;
