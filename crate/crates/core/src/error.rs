use thiserror::Error;

/// Errors raised by the categorical algebra layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatError {
    #[error("category mismatch: expected {expected} simples, found {found}")]
    CategoryMismatch { expected: usize, found: usize },

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("functor mismatch: {0}")]
    FunctorMismatch(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid labels: {0}")]
    Labels(String),

    #[error("empty linear combination")]
    EmptyCombination,

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("malformed boolean table: {0}")]
    BadTable(String),

    #[error("invalid tolerance {0}")]
    Tolerance(f64),
}

pub type Result<T> = std::result::Result<T, CatError>;
