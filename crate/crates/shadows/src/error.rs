use flo_gsim::GsimError;
use flo_matlin::MatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShadowError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Gsim(#[from] GsimError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("accumulator shape mismatch: {0}")]
    Shape(String),
}
