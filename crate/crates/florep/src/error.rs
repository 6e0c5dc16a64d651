use flo_matlin::MatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FloError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not orthogonal (residual {0:e})")]
    NotOrthogonal(f64),
    #[error("orthogonal matrix does not commute with J (residual {0:e}); it is not passive")]
    NotPassive(f64),
    #[error("passive alignment is degenerate: smallest singular value {0:e}")]
    DegenerateAlignment(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed gate record: {0}")]
    Gate(String),
}
