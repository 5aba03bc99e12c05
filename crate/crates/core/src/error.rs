use thiserror::Error;

use crate::divalg::Tag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    #[error("algebra tag mismatch: {0:?} vs {1:?}")]
    TagMismatch(Tag, Tag),
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix is not in {family} (residual {residual:.3e})")]
    NotMember { family: String, residual: f64 },
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("outside domain: {0}")]
    OutsideDomain(String),
    #[error("size too large: {0}")]
    TooLarge(String),
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, OrbitError>;

impl From<serde_json::Error> for OrbitError {
    fn from(e: serde_json::Error) -> Self {
        OrbitError::Json(e.to_string())
    }
}
