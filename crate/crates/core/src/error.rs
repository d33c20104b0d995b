use thiserror::Error;

/// Errors raised by the computational routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dominant weight {parts:?}: {reason}")]
    InvalidWeight { parts: Vec<i64>, reason: &'static str },

    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix with {rows} rows exceeds the size cap of {cap}")]
    SizeCap { rows: usize, cap: usize },

    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
