use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Interval refinement reached the precision cap without isolating the
    /// floor (or sign). Carries the last interval.
    #[error("undecided at {bits} fractional bits: value in [{low}, {high}]")]
    Undecided {
        bits: u32,
        low: BigRational,
        high: BigRational,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
