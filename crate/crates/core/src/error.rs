use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("inhomogeneous expression")]
    Inhomogeneous,
    #[error("degree {degree} exceeds cutoff {cutoff}")]
    CutoffExceeded { degree: u32, cutoff: u32 },
    #[error("not in ring: {0}")]
    NotInRing(String),
    #[error("window is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
