use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} out of range (supported: 1..=32)")]
    Dimension(u32),

    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: u32, got: u32 },

    #[error("no unmatched 0 to flip: the bitstring is the top of its chain")]
    NoUnmatchedZero,

    #[error("no unmatched 1 to flip: the bitstring is the bottom of its chain")]
    NoUnmatchedOne,

    #[error("the block-code representative selection requires a prime dimension, got n={0}")]
    CompositeDimension(u32),

    #[error("chain is not unimodal: {0}")]
    NotUnimodal(String),

    #[error("edge capacity exceeded: {0}")]
    CapacityViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("solver process failed: {0}")]
    SolverProcess(String),

    #[error("model is inconsistent with the formula: {0}")]
    ModelInconsistent(String),

    #[error("unroll search exhausted its step budget")]
    UnrollBudget,

    #[error("family cannot be unrolled, but no single blocking pair exists")]
    NoBlockingPair,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
