use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("variable index {index} exceeds declared variable count {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("variable count must be at least 1")]
    InvalidVarCount,
    #[error("tuple length {got} does not match expected length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("tuples must contain at least one entry")]
    EmptyTuple,
    #[error("cannot pad a tuple of length {len} to shorter length {m}")]
    PadTooShort { m: usize, len: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
