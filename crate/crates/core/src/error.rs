//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constraint validation, oracles, and algorithms.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A per-color count vector does not match the constraint's color count.
    #[error("count vector has {got} entries but the constraint has {expected} colors")]
    ColorCountMismatch { got: usize, expected: usize },

    /// A color index is outside `[0, C)`.
    #[error("color {0} out of range ({1} colors)")]
    ColorOutOfRange(u32, u32),

    /// An element index is outside `[0, n)`.
    #[error("element {0} out of range (ground set has {1} elements)")]
    ElementOutOfRange(u32, usize),

    /// The constraint system admits no feasible solution.
    #[error("infeasible instance: {0}")]
    Infeasible(String),

    /// An operation was invoked outside its stated contract.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// An exhaustive procedure refused to run on an oversized instance.
    #[error("instance too large: {what} = {n} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    /// A configuration or generator parameter is invalid.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
