use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("expected boundary arity {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("mixed boundary arities in one vector")]
    MixedArity,

    #[error("boundary index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("graph is not prime: {0}")]
    NotPrime(String),

    #[error("graph is not a forest: {0}")]
    NotForest(String),

    #[error("weight for {graph} is outside the solved range (solved through order {solved})")]
    Unsolved { graph: String, solved: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("bivector is not {0}")]
    Bivector(&'static str),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
