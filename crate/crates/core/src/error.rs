use thiserror::Error;

/// Errors raised by the algebra, graph and verification layers.
///
/// Budget errors are kept apart from mathematical errors so callers can
/// distinguish "the answer is no" from "we gave up".
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {reason} (witness: {witness})")]
    Hypothesis { reason: String, witness: String },

    #[error("budget exceeded: {what} reached {size} (limit {limit})")]
    Budget {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("exponent overflow")]
    Overflow,
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
