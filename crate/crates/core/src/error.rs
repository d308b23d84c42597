use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular system")]
    Singular,
    #[error("parameters out of range: {0}")]
    Range(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("enumeration exceeded cap of {0}")]
    CapExceeded(usize),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("cannot parse {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
