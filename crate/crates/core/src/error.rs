use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("J does not square to -1: {0}")]
    NotComplexStructure(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("matrix does not intertwine the complex structures")]
    NotHolomorphic,
    #[error("map has zero determinant")]
    NotIsogeny,
    #[error("sublattice is not stable under the complex structure")]
    NotJStable,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("form is not of type (1,1) for this complex structure")]
    IncompatibleClass,
    #[error("tensor power must be positive, got {0}")]
    NonPositivePower(i64),
    #[error("line bundle class is degenerate")]
    DegenerateClass,
    #[error("determinant form is not integral")]
    NonIntegralDeterminant,
    #[error("matrix too large for this routine: {0}")]
    TooLarge(String),
    #[error("class does not split along elliptic factors")]
    NotDecomposable,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
