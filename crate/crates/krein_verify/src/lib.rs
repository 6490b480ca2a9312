//! Krein's resolvent formula
//!
//! (A₁ - z)⁻¹ - (A₀ - z)⁻¹ = -γ(z) M(z)⁻¹ γ(z̄)*
//!
//! and the γ-field identities, checked on discretized models whose
//! resolvents can be applied exactly: the truncated Jacobi chain and a
//! finite-difference δ-interaction on the line.

mod audit;
mod discretization;
mod residual;

pub use audit::{gamma_field_audit, GammaAudit, GammaAuditRow, GammaIdentity};
pub use discretization::{FdDeltaLineDiscretization, GammaSample, JacobiDiscretization, KreinModel};
pub use residual::{bump_probes, krein_residual, random_probes, KreinConvergence, KreinConvergenceRow};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KreinError {
    #[error("resolvent unavailable: {0}")]
    ResolventUnavailable(String),
    #[error("M(z) is singular at z = {z_re}{z_im:+}i")]
    SingularWeylValue { z_re: f64, z_im: f64 },
    #[error("probe has length {got}, state dimension is {expected}")]
    InvalidProbe { expected: usize, got: usize },
    #[error(transparent)]
    Zoo(#[from] model_zoo::ZooError),
}
