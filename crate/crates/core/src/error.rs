use thiserror::Error;

/// Errors produced by the library.
///
/// `InvalidSystem`, `InvalidQuery`, `OutOfRange` and `Domain` describe bad
/// caller input; `CapExceeded` means the request is valid but larger than the
/// configured size limits; `Integrity` means a computed result violated an
/// invariant it must satisfy.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("{what} = {value} out of range: {bound}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl TryInto<i64>, bound: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            bound: bound.into(),
        }
    }

    /// True when the error stems from caller-supplied parameters rather than
    /// from a computation.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidSystem(_)
                | Error::InvalidQuery(_)
                | Error::OutOfRange { .. }
                | Error::Domain(_)
                | Error::CapExceeded { .. }
                | Error::Parse(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
