use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a basis")]
    NotABasis,
    #[error("degenerate objective: maximizer not unique")]
    DegenerateObjective,
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("enumeration cap exceeded: n = {n} > {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("window bound exceeded: {0}")]
    WindowExceeded(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
