use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the zero polynomial cannot be compiled")]
    ZeroPolynomial,
    #[error("point length {got} does not match variable count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("family size exceeds the ceiling of {ceiling} variables")]
    CeilingExceeded { ceiling: usize },
    #[error("variable x{index} does not occur in the polynomial")]
    UnusedVariable { index: usize },
    #[error("input must be nonnegative")]
    NegativeInput,
    #[error("need at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },
}

impl PolyError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        PolyError::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
