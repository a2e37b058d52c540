use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("divergent series: area must be positive, got {0}")]
    DivergentSeries(f64),
    #[error("inadmissible coupling: {0}")]
    Admissibility(String),
    #[error("singular torus point: {0}")]
    Singular(String),
    #[error("malformed surface: {0}")]
    Structure(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
