use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),
    #[error("unsupported decay class: {0}")]
    UnsupportedDecay(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("unsupported realization: {0}")]
    UnsupportedRealization(String),
    #[error("matrix is not symmetric (defect {0:e})")]
    NotSymmetric(f64),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
