use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),

    #[error("modulus must be odd and positive, got {0}")]
    InvalidModulus(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// Exact division failed; `index` is the first coefficient that did not divide.
    #[error("inexact division at coefficient index {index}")]
    InexactDivision { index: usize },

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),

    #[error("interpolated coefficient at index {index} is not an integer")]
    NonIntegral { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{n} is composite, so H_{n}(x) vanishes identically and has no closed form; use a composite certificate")]
    CompositeInput { n: u64 },

    /// A mathematical claim that should always hold was observed to fail.
    #[error("falsified claim: {0}")]
    Falsified(String),
}
