use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidType(String),
    #[error("invalid parabolic spec: {0}")]
    InvalidParabolic(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("interpolation: {0}")]
    Interpolation(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("incompatible configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
