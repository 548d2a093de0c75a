use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("subspaces have different ambient dimensions ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("invalid right-module shape: {0}")]
    InvalidShape(String),
    #[error("right action does not satisfy the sl2 relations: {0}")]
    NotRightModule(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("ladder parameters out of range: n={n}, k={k}")]
    LadderRange { n: u32, k: u32 },
    #[error("matrix does not satisfy (I + Phi) Phi = 0")]
    NotIdempotentType,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
