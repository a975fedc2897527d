use thiserror::Error;

/// Errors raised by the exact arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative length {0}")]
    NegativeLength(i64),

    #[error("zero factor (1 - q^0) in {0}")]
    ZeroFactor(String),

    #[error("inexact division by {0}")]
    InexactDivision(String),

    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("invalid pair (p, p') = ({p}, {pp}): {reason}")]
    InvalidPair { p: i64, pp: i64, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lattice enumeration did not converge at cap {cap}: enlarged box adds {extra}")]
    NonConvergent { cap: i64, extra: String },

    #[error("relative-parameter mismatch: {0}")]
    WrongRelative(String),
}

pub type Result<T> = std::result::Result<T, Error>;
