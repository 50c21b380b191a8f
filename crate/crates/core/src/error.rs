use thiserror::Error;

use crate::fermat_chain::Branch;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity that had to be a perfect (rational) square was not.
    #[error("{what} = {value} is not a perfect square")]
    NotASquare { what: &'static str, value: String },

    /// A zero denominator in one of the two closed-form branches.
    #[error("degenerate system for branch {branch}: {factor} = 0")]
    DegenerateSystem { branch: Branch, factor: &'static str },

    #[error("x + y = {sum} is not positive")]
    NonPositiveSum { sum: String },

    #[error("invalid generator pair (m, n) = ({m}, {n}): {reason}")]
    InvalidGenerator {
        m: String,
        n: String,
        reason: &'static str,
    },

    #[error("malformed number {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },

    /// An emitted value failed its own post-condition check.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn not_square(what: &'static str, value: impl ToString) -> Self {
        Error::NotASquare {
            what,
            value: value.to_string(),
        }
    }

    /// Short machine-readable tag, used by the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NotASquare { .. } => "not_a_square",
            Error::DegenerateSystem { .. } => "degenerate_system",
            Error::NonPositiveSum { .. } => "non_positive_sum",
            Error::InvalidGenerator { .. } => "invalid_generator",
            Error::Parse { .. } => "parse",
            Error::Invariant(_) => "invariant",
        }
    }
}
