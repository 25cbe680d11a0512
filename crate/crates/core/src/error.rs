use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("objects live on different chains")]
    ChainMismatch,

    #[error("empty input")]
    EmptyInput,

    #[error("unsupported tableau shape: {0}")]
    Shape(String),

    #[error("construction failed on loop {loop_index}: {reason}")]
    Infeasible { loop_index: usize, reason: String },

    #[error("certificate does not verify (indices {indices:?}); try a larger separation factor")]
    Verification { indices: Vec<usize> },

    #[error("expected total degree {expected}, got {got}")]
    Degree { expected: u32, got: u32 },

    #[error("pipeline mismatch at {stage}: {detail}")]
    Golden { stage: String, detail: String },

    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

pub type Result<T> = std::result::Result<T, Error>;
