//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("r must be at least 2; order-p squares (r = 1) are pandiagonal squares of prime \
             order and can be built with de la Loubere's classical method instead")]
    RankTooSmall,

    #[error("order p^r does not fit in 64 bits for p = {p}, r = {r}")]
    OrderOverflow { p: u64, r: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus mismatch: {lhs} vs {rhs}")]
    ModulusMismatch { lhs: u64, rhs: u64 },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("symbol {symbol} out of range 0..{limit}")]
    SymbolOutOfRange { symbol: u64, limit: u64 },

    #[error("location ({row}, {col}) out of range for order {n}")]
    LocationOutOfRange { row: u64, col: u64, n: u64 },

    #[error("vector length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },

    #[error("{0} is not a permutation of 0..{1}")]
    NotPermutation(String, usize),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("duplicate symbol {0} in square")]
    DuplicateSymbol(u64),

    #[error("p = {p} does not divide the order n = {n}")]
    DoesNotDivide { p: u64, n: u64 },

    #[error("p^2 = {psq} does not divide the order n = {n}; the reduced check requires it")]
    SquareDoesNotDivide { psq: u64, n: u64 },

    #[error("type parameter p must be at least 2, got {0}")]
    TypeTooSmall(u64),

    #[error("target sums for order {n}, type {p} are not integers; no natural square qualifies")]
    NonIntegralTargets { n: u64, p: u64 },

    #[error("window dimensions must be positive, got m = {m}, blocks = {blocks}")]
    BadWindow { m: u64, blocks: u64 },

    #[error("search space of {required} candidates exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("shard index {shard_index} is not below shard count {shard_count}")]
    BadShard { shard_index: u64, shard_count: u64 },

    #[error("checkpoint does not match this run: {0}")]
    CheckpointMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
