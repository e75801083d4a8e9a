use thiserror::Error;

/// Errors raised by group construction and invariant computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element is not a member of the group")]
    NotMember,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{what} cap exceeded: {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("time budget of {seconds} s exhausted during {what}")]
    TimeBudget { what: &'static str, seconds: u64 },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("arity mismatch for `{name}`: {message}")]
    Arity { name: String, message: String },

    #[error("invalid action map: {0}")]
    InvalidAction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            size: size.into(),
            cap: cap.into(),
        }
    }

    /// True for errors raised because a size cap or the time budget ran out.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::TimeBudget { .. })
    }

    /// True for errors produced while reading expression text.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownAtom(_) | Error::Arity { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
