use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be positive, got {0}")]
    InvalidDegree(u32),
    #[error("the frobenius_half involution needs an even extension degree, got k = {0}")]
    OddDegreeFrobenius(u32),
    #[error("GF({p}^{k}) exceeds the supported field order {max}")]
    FieldTooLarge { p: u32, k: u32, max: u32 },
    #[error("field element {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u32, order: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is singular (not in GL)")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("(A,B) has rank {rank} < {n}: not a point")]
    NotAPoint { rank: usize, n: usize },
    #[error("pair is not unimodular")]
    NotUnimodular,
    #[error("matrix is not σ-Hermitian")]
    NotHermitian,
    #[error("subspace is not totally isotropic")]
    NotTotallyIsotropic,
    #[error("form is not trace-valued")]
    NotTraceValued,
    #[error("V ⊕ W does not equal U")]
    NotDirectSum,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("block size must be at least 2, got {0}")]
    InvalidBlockSize(usize),
    #[error("configuration needs about {estimate} items, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
