use thiserror::Error;

/// Errors raised by the group and fusion engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configured size bound was exceeded. Inputs past the caps fail
    /// rather than thrash.
    #[error("{what} exceeds configured cap of {limit}")]
    CapExceeded { what: String, limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: u64, p: u64 },

    #[error("subgroup of order {order} is not a Sylow {p}-subgroup (expected order {expected})")]
    NotSylow { order: u64, p: u64, expected: u64 },

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u64 },

    #[error("element does not normalize the subgroup")]
    NotNormalizing,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for the cap-exceeded family, which front ends report separately.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: {
                let m = e.to_string();
                match m.rsplit_once(" at line ") {
                    Some((head, _)) => head.to_string(),
                    None => m,
                }
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
