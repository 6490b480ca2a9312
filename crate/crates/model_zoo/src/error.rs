use scatter_engine::ScatterError;
use specfun::SpecfunError;
use thiserror::Error;
use weyl_core::WeylError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZooError {
    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),
    #[error("no analytic oracle for this configuration: {0}")]
    OracleUnavailable(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Scatter(#[from] ScatterError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

impl From<ZooError> for WeylError {
    fn from(e: ZooError) -> Self {
        match e {
            ZooError::Weyl(w) => w,
            other => WeylError::ModelDomainError(other.to_string()),
        }
    }
}

pub(crate) fn special(e: SpecfunError) -> WeylError {
    WeylError::ModelDomainError(e.to_string())
}
