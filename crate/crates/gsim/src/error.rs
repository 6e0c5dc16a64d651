use flo_florep::FloError;
use flo_matlin::MatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GsimError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Flo(#[from] FloError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("marginal probability {0} left [0, 1]; conditioning broke purity")]
    Degenerate(f64),
    #[error("invalid observable: {0}")]
    Observable(String),
}
