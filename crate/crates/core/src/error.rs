use thiserror::Error;

/// Errors raised by the library. Failed hypotheses are never errors; they are
/// reported as verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty configuration")]
    EmptyConfiguration,

    #[error("duplicate point {0:?} in configuration")]
    DuplicatePoint(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("configuration is not smooth: {0}")]
    NotSmooth(String),

    #[error("resource budget exceeded: {resource} limit {limit}")]
    BudgetExceeded {
        resource: &'static str,
        limit: usize,
    },

    #[error("not a valid Cayley restriction: {0}")]
    InvalidCayleyRestriction(String),

    #[error("k = {k} exceeds the Cayley length {length}")]
    LengthTooSmall { k: usize, length: usize },

    #[error("degree mismatch: integrand has degree {integrand}, space has dimension {dimension}")]
    DegreeMismatch { integrand: usize, dimension: usize },

    #[error("negative restriction degree {0}; counting needs all degrees >= 0")]
    NegativeDegree(i64),

    #[error("faces do not form a pi-face chain: {0}")]
    NotPiFaceChain(String),

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("class {0} is not effective and non-trivial")]
    NotEffective(usize),

    #[error("no generic evaluation vector found after {0} attempts")]
    NonGeneric(usize),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
