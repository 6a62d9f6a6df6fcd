use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse `{0}` as a rational")]
    ParseRational(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("points are affinely dependent")]
    AffinelyDependent,

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two exact routes that must agree did not. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors caused by the caller's data rather than a defect.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
