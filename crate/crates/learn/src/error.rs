use flo_florep::FloError;
use flo_foracle::OracleError;
use flo_gsim::GsimError;
use flo_matlin::MatError;
use flo_shadows::ShadowError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LearnError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Flo(#[from] FloError),
    #[error(transparent)]
    Gsim(#[from] GsimError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("malformed experiment: {0}")]
    Spec(String),
    #[error("resource model violation: {0}")]
    Resource(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("bootstrap diverged at iteration {t}: {reason}")]
    BootstrapDivergence { t: u32, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
