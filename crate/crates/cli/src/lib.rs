//! Library side of the qpsym command-line tool: the flow-file format,
//! report construction and rendering, and the built-in worked-example
//! regression suite.

pub mod flowfile;
pub mod report;
pub mod verify;

use std::fmt;

/// CLI-level error with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparseable input (exit 2).
    Input(String),
    /// A domain error from the analysis (exit 2).
    Domain(qpsym_core::Error),
    /// Internal inconsistency, e.g. oracle disagreement (exit 3).
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Domain(_) => 2,
            CliError::Inconsistent(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{}", msg),
            CliError::Domain(e) => write!(f, "{}: {}", e.name(), e),
            CliError::Inconsistent(msg) => write!(f, "Internal: {}", msg),
        }
    }
}

impl From<qpsym_core::Error> for CliError {
    fn from(e: qpsym_core::Error) -> Self {
        match e {
            qpsym_core::Error::Internal(msg) => CliError::Inconsistent(msg),
            other => CliError::Domain(other),
        }
    }
}
