use numkernel::LinalgError;
use thiserror::Error;
use weyl_core::WeylError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error("M(λ+i0) is numerically singular at λ = {lambda} (condition {condition:.3e})")]
    SingularWeylValue { lambda: f64, condition: f64 },
    #[error("I - αN is numerically singular at λ = {lambda} (condition {condition:.3e})")]
    SingularRobinPencil { lambda: f64, condition: f64 },
    #[error("imaginary part is indefinite: {0}")]
    IndefiniteImPart(String),
    #[error("sample at λ = {lambda} is not unitary (defect {defect:.3e})")]
    NonUnitarySample { lambda: f64, defect: f64 },
    #[error("α must be a Hermitian {expected}x{expected} matrix: {detail}")]
    BadCoupling { expected: usize, detail: String },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
