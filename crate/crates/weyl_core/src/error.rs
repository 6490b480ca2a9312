use numkernel::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeylError {
    #[error("model has no direct boundary value at λ = {lambda}")]
    UnsupportedBoundaryPoint { lambda: f64 },
    #[error("model domain error: {0}")]
    ModelDomainError(String),
    #[error("λ = {lambda} lies in the exclusion set: {reason}")]
    ExclusionSetHit { lambda: f64, reason: String },
    #[error("ε-extrapolation diverged: successive differences {differences:?}")]
    ExtrapolationDiverged { differences: Vec<f64> },
    #[error("Nevanlinna property violated at z = {z_re}+{z_im}i: min eigenvalue of Im M is {min_eigenvalue:.3e}")]
    NevanlinnaViolation { z_re: f64, z_im: f64, min_eigenvalue: f64 },
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("invalid spectral point: {0}")]
    InvalidPoint(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
