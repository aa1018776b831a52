use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Jacobi identity fails on `(e_i, e_j, e_k)` (1-based indices).
    #[error("not a Lie algebra: Jacobi identity fails on (e{}, e{}, e{})", .0.0, .0.1, .0.2)]
    NotALieAlgebra((usize, usize, usize)),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not an almost generalized complex structure: {0}")]
    NotAlmostGcs(String),

    #[error("invalid complex structure: {0}")]
    InvalidComplexStructure(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("structure is not integrable: {0}")]
    NotIntegrable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A proven identity failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
