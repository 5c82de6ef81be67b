use thiserror::Error;

/// Errors raised by shape, permutation and correspondence operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotPartition(Vec<usize>),

    #[error("partition {shape} does not fit in the {rows}x{cols} rectangle")]
    NotContained { shape: String, rows: usize, cols: usize },

    #[error("invalid rectangle: m = {m}, r = {r} (both must be at least 1)")]
    InvalidRect { m: usize, r: usize },

    #[error("bit string has {zeros} zeros and {ones} ones, expected {m} and {r}")]
    BitCount { zeros: usize, ones: usize, m: usize, r: usize },

    #[error("not a permutation of 1..{n}: {window:?}")]
    NotPermutation { window: Vec<usize>, n: usize },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("permutation {window} has descents {found:?}, expected {expected}")]
    Descents { window: String, found: Vec<usize>, expected: String },

    #[error("partition {0} is not {1}-bounded")]
    NotKBounded(String, usize),

    #[error("{arg} = {value} out of range ({range})")]
    Range { arg: &'static str, value: i64, range: String },

    #[error("degree balance fails: {lhs} != {rhs}")]
    DegreeBalance { lhs: i64, rhs: i64 },

    #[error("descent condition fails: tilde(d) = {tilde:?} but D(w) - D(u) - D(v) = {descent:?}")]
    TildeMismatch { tilde: Vec<i64>, descent: Vec<i64> },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
