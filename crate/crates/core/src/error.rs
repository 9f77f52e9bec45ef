use thiserror::Error;

use crate::quadrature::QuadratureError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),

    /// Every contribution in an ensemble underflowed, so ratios are undefined.
    #[error("all species contributions underflowed at this separation")]
    Underflow,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
