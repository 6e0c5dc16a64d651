use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not skew-symmetric (residual {0:e})")]
    NotSkew(f64),
    #[error("principal root undefined: eigenvalue argument {0} is within the margin of ±π")]
    RootPrecondition(f64),
    #[error("real root has imaginary residue {0:e}")]
    ComplexResidue(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}
