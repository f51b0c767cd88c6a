use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A witness could not be certified after refinement; the input is
    /// most likely on the knife edge of the decision.
    #[error("numerical witness failure: {0}")]
    WitnessFailure(String),

    #[error("eigenvalue iteration did not converge for a {0}x{0} matrix")]
    NoConvergence(usize),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid tolerance configuration: {0}")]
    Config(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("malformed matrix document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
