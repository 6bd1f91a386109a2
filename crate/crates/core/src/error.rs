use thiserror::Error;

use crate::homotopy::SolutionSet;
use crate::unipoly::RootSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),
    #[error("multi-index sums to {got}, expected degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("non-finite coefficient produced by polynomial arithmetic")]
    NumericOverflow,
    #[error("root finder did not converge")]
    SolverStall(Box<RootSet>),
    #[error("degree {0} is too small for this operation")]
    DegreeTooSmall(usize),
    #[error("zv-u vanishes but phi matches no known exceptional form")]
    UnclassifiedExceptional,
    #[error("path tracking failed on {failed} of {total} paths")]
    TrackingUnreliable {
        failed: usize,
        total: usize,
        partial: Box<SolutionSet>,
    },
    #[error("system too large: {0}")]
    SystemTooLarge(String),
    #[error("zero tensor")]
    ZeroTensor,
    #[error("tensor is not a normalized state (hs norm {0})")]
    StateNormalization(f64),
    #[error("operation requires a real tensor")]
    NotReal,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
