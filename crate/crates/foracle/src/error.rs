use flo_matlin::MatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("{n} modes exceed the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
