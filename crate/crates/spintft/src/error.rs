use std::fmt;

use spintft_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_CHECK: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    /// Malformed input or data violating a structural invariant.
    Schema(String),
    Cap(String),
    Check(String),
}

impl CliError {
    pub fn schema(field: &str, e: Error) -> Self {
        match CliError::from(e) {
            CliError::Schema(m) => CliError::Schema(format!("{field}: {m}")),
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Check(_) => EXIT_CHECK,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Schema(_) => "schema",
            CliError::Cap(_) => "cap_exceeded",
            CliError::Check(_) => "check_failed",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Schema(m) | CliError::Cap(m) | CliError::Check(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationTooLarge { .. } | Error::OrderOverflow { .. } => CliError::Cap(e.to_string()),
            Error::CheckFailed(_) => CliError::Check(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}
