use std::fmt;

use majorana_core::Error;

/// Failure of a CLI command, grouped by exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unusable configuration or arguments (exit 2).
    Config(String),
    /// A numeric self-check exceeded its tolerance (exit 3).
    SelfCheck(String),
    /// Reading or writing files failed (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::SelfCheck(_) => 3,
        }
    }

    /// Wraps a core error raised while processing `context`.
    pub fn from_core(context: &str, err: Error) -> Self {
        match err {
            Error::SelfCheck { .. } => CliError::SelfCheck(format!("{context}: {err}")),
            Error::Csv(_) => CliError::Io(format!("{context}: {err}")),
            _ => CliError::Config(format!("{context}: {err}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::SelfCheck(msg) => write!(f, "self-check failed: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Fails with exit code 3 when `deviation` exceeds `tolerance`.
pub fn self_check(what: impl fmt::Display, deviation: f64, tolerance: f64) -> Result<(), CliError> {
    if deviation <= tolerance {
        Ok(())
    } else {
        Err(CliError::SelfCheck(format!(
            "{what}: deviation {deviation:e} exceeds tolerance {tolerance:e}"
        )))
    }
}
