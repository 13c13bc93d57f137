use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("not symmetric within tolerance")]
    Asymmetric,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("operation needs the float backend: {0}")]
    Backend(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no unit element")]
    NoUnit,
    #[error("unknown {0}")]
    Unknown(String),
    #[error("invalid algebra file: {0}")]
    Format(String),
    #[error("iteration budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
