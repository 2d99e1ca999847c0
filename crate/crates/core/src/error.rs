use thiserror::Error;

/// Failures reported by the library. Verification outcomes that are merely
/// negative (no certificate, failed check) are returned as data, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("zero polynomial has no root structure")]
    ZeroPolynomial,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("determinant is {0}, expected 1")]
    DetNotOne(String),
    #[error("trace is {0}, expected 0")]
    TraceNotZero(String),
    #[error("subspace is not abelian")]
    NotAbelian,
    #[error("wrong dimension: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("subspace is not contained in the upper-triangular Borel subalgebra")]
    NotInBorel,
    #[error("unsupported rank n = {0}")]
    UnsupportedRank(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),
    #[error("sampling aliased: consecutive lifted gap {0} is too large")]
    Aliasing(f64),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
