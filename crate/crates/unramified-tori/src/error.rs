use thiserror::Error;

/// Errors produced by the lattice, torus and character machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("matrix has no finite multiplicative order up to {bound}")]
    NoFiniteOrder { bound: usize },
    #[error("vector does not lie in the ambient sublattice")]
    NotInLattice,
    #[error("bottom generator {index} is not an integral combination of the top lattice")]
    Containment { index: usize },
    #[error("group enumeration exceeded the configured bound {bound}")]
    GroupBoundExceeded { bound: usize },
    #[error("enumerating {needed} characters exceeds the budget {budget}")]
    BudgetExceeded { needed: String, budget: usize },
    #[error("q must be a prime power >= 2, got {q}")]
    NotPrimePower { q: u64 },
    #[error("invalid torus datum: {0}")]
    InvalidDatum(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the tits lift rule requires a permutation-matrix Weyl element on a type-A datum")]
    TitsRequiresPermutation,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
