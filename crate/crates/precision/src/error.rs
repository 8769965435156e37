use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] abramowitz::Error),
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate least squares system: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
