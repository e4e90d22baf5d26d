use thiserror::Error;

use crate::ring::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("{0}")]
    ZeroInput(&'static str),

    #[error("parse error{}: {message}", location(*.line, .field.as_deref()))]
    Parse { line: Option<usize>, field: Option<String>, message: String },

    #[error("ring specification failed validation:\n{0}")]
    InvalidRing(ValidationReport),

    #[error("{what}: needs {needed} work units but the budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },

    #[error("exponent {t} is not a multiple of class-group exponent {e}")]
    ExponentNotMultiple { t: u64, e: u64 },

    #[error("genus {genus} exceeds the enumeration cap {cap}")]
    GenusCap { genus: u64, cap: u64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn location(line: Option<usize>, field: Option<&str>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!(" at line {l} (field `{f}`)"),
        (Some(l), None) => format!(" at line {l}"),
        (None, Some(f)) => format!(" in field `{f}`"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse { line: None, field: None, message: message.into() }
    }
}
