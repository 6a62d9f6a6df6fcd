//! Exit statuses and the error type every command returns.

use std::fmt;

use effcert::efficiency::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Efficient verdict, or a command that reports no verdict succeeded.
    Ok = 0,
    InputError = 2,
    Inefficient = 10,
    /// The instance fails the assumptions needed for a verdict.
    NoVerdict = 11,
    /// Not an equilibrium, or dominant-strategy incentive compatibility fails.
    NotEquilibrium = 12,
    Internal = 70,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of(verdict: Verdict) -> Status {
        match verdict {
            Verdict::Efficient => Status::Ok,
            Verdict::Inefficient => Status::Inefficient,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Internal(_) => Status::Internal,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<effcert::Error> for CliError {
    fn from(e: effcert::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("cannot write CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
