use thiserror::Error;

/// Errors raised by the algebra and pipeline layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("modulus {p} must be a prime greater than {n}")]
    BadModulus { p: u32, n: usize },
    #[error("denominator {0} is not invertible modulo {1}")]
    NonInvertible(i64, u32),
    #[error("matrix is not in row canonical form")]
    NotCanonical,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree {0} is not an odd integer >= 3")]
    BadDegree(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word does not have multidegree {0:?}")]
    WrongMultidegree(Vec<u8>),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("partition {0} has no new identity")]
    NoNewIdentity(String),
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
