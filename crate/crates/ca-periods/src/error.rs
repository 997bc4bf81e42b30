use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("arguments not coprime: gcd({a}, {m}) != 1")]
    NotCoprime { a: u64, m: u64 },

    #[error("ring or modulus mismatch: {0}")]
    RingMismatch(String),

    #[error("sigma = {0} not supported here (need one of {1})")]
    UnsupportedSigma(u64, &'static str),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("budget exceeded: {needed} node visits > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("alphabet mismatch: state {state} out of range for n = {n}")]
    AlphabetMismatch { state: u64, n: u64 },

    #[error("invalid rule table: {0}")]
    InvalidRule(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
