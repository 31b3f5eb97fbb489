//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by constellation, link, scheduling, and experiment code.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value violates an invariant (bad plane count,
    /// altitude outside the LEO band, malformed bounding box, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The channel cannot carry any payload (capacity underflow at the
    /// requested distance).
    #[error("link infeasible: {0}")]
    LinkInfeasible(String),

    /// A job cannot be scheduled (empty AOI, not enough nodes for the
    /// requested collector/mapper counts, empty candidate set).
    #[error("job infeasible: {0}")]
    JobInfeasible(String),

    /// Caller passed inconsistent arguments (mixed ascending/descending
    /// node sets, non-square matrix, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
