use thiserror::Error;

/// Errors produced by state construction, class handling, and measure
/// evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimensions {dims:?}: {reason}")]
    Dimension { dims: Vec<usize>, reason: String },

    #[error("index {index:?} is not valid for dimensions {dims:?}")]
    Index { index: Vec<usize>, dims: Vec<usize> },

    #[error("offset {offset} out of range for total dimension {total}")]
    Offset { offset: usize, total: usize },

    #[error("duplicate entry for index {index:?}")]
    DuplicateIndex { index: Vec<usize> },

    #[error("degenerate state: norm {norm:e} is too small to normalize")]
    DegenerateState { norm: f64 },

    #[error("state norm {norm} deviates from 1 by more than {tol:e}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("invalid subsystem class: {0}")]
    Class(String),

    #[error("invalid subsystem permutation: {0}")]
    Permutation(String),

    #[error("operation requires {expected} subsystems, state has {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("minor is identically zero for this index pair and class")]
    TrivialTerm,

    #[error("normalization constant must be positive, got {0}")]
    NormConst(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
