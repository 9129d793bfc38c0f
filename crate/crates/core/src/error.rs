use thiserror::Error;

use crate::graded::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("unsupported product: {0}")]
    UnsupportedProduct(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("grade {grade} is not nilpotent: descending sequence stabilizes at dimension {stabilized}")]
    NotNilpotent { grade: usize, stabilized: usize },

    #[error("not an infinitesimal deformation: {0}")]
    NotInfinitesimal(Box<Violation>),

    #[error("not integrable: {0}")]
    NotIntegrable(Box<Violation>),
}
