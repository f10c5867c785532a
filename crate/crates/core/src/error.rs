use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("index {index} outside supported range 1..={horizon}")]
    OutOfRange { index: u64, horizon: u64 },

    /// A configured work budget ran out before an answer was found.
    #[error("resource limit reached: {0}")]
    Resource(String),

    /// Chain search gave up; `partial` is the deepest prefix that was reached.
    #[error("chain search exhausted at level {level}: {reason}")]
    SearchExhausted {
        level: usize,
        reason: String,
        partial: Vec<BigUint>,
    },

    /// An enclosure is too coarse to decide the requested quantity.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
