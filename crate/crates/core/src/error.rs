use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid group: {0}")]
    Semantic(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u128 },

    #[error("group is not materialized")]
    NotMaterialized,

    #[error("subgroup lattice unavailable: {0}")]
    LatticeUnavailable(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("unknown group name {0:?}")]
    UnknownName(String),

    #[error("statistic unavailable: {0}")]
    Unavailable(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(String),

    #[error("malformed data at line {line}: {msg}")]
    Data { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
