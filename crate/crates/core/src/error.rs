use thiserror::Error;

/// Errors raised anywhere in the compiler pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed circuit document: {0}")]
    Parse(String),
    #[error("instruction {id}: qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { id: usize, qubit: usize, width: usize },
    #[error("instruction {id}: qubit {qubit} appears more than once")]
    DuplicateQubit { id: usize, qubit: usize },
    #[error("instruction {id}: {reason}")]
    InvalidInstruction { id: usize, reason: String },
    #[error("dynamic input: {0}")]
    DynamicInput(String),
    #[error("circuit is not a normalized static circuit: {0}")]
    NotStatic(String),
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid qubit list for gate update: {0}")]
    InvalidUpdate(String),
    #[error("cycle detected")]
    Cycle,
    #[error("invalid edge selection: {0}")]
    InvalidEdges(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("unknown gate {0}")]
    UnknownGate(String),
    #[error("incomparable measurement sets: {0}")]
    Incomparable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
