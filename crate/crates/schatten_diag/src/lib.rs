//! Singular-value decay of finite sections of Im M(z), γ(z) and the
//! resolvent difference (A₁ - z)⁻¹ - (A₀ - z)⁻¹, compared with the
//! polynomial upper bounds s_j = O(j^{-p}) that Schatten-class membership
//! predicts.

use num_complex::Complex64;
use numkernel::{singular_values, ComplexMatrix};
use model_zoo::{ModelHandle, ModelKind, SymbolKind, ZooError};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use weyl_core::{SpectralPoint, WeylError, WeylModel};

/// Largest dense matrix the diagnostics will assemble.
pub const DENSE_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchattenError {
    #[error("{0} is not mode-diagonal and exceeds the dense cap")]
    ModelNotDiagonal(String),
    #[error("z = {0} must lie off the real axis")]
    RealPoint(Complex64),
    #[error("bad exponent {0}")]
    BadExponent(f64),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Linalg(#[from] numkernel::LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entity {
    /// Im M(z).
    ImWeylAtZ,
    /// (A₁ - z)⁻¹ - (A₀ - z)⁻¹ = -γ(z)M(z)⁻¹γ(z̄)*.
    KreinDifference,
    /// γ(z).
    GammaField,
}

impl std::str::FromStr for Entity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "im-weyl-at-z" | "im-m" => Ok(Entity::ImWeylAtZ),
            "krein-difference" | "krein" => Ok(Entity::KreinDifference),
            "gamma-field" | "gamma" => Ok(Entity::GammaField),
            _ => Err(format!("unknown entity '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub entity: Entity,
    pub model: String,
    pub z: Complex64,
    /// s_1 ≥ s_2 ≥ …, index j = position + 1.
    pub singular_values: Vec<f64>,
    pub predicted_exponent: f64,
    /// Least-squares slope of -log s_j against log j over the tail half;
    /// diagnostic only.
    pub fitted_exponent: Option<f64>,
    /// max_j s_j·j^p over the head half (j ≤ n/2).
    pub head_constant: f64,
    /// max_j s_j·j^p over the tail half.
    pub tail_constant: f64,
    pub verdict: Verdict,
}

/// Exponent p of the predicted bound s_j = O(j^{-p}), or None when no
/// claim is attached to the (entity, model) pair.
pub fn predicted_exponent(entity: Entity, kind: ModelKind) -> Option<f64> {
    let n = kind.dimension() as f64;
    match (entity, kind) {
        // S₁-regular Weyl functions
        (Entity::ImWeylAtZ, ModelKind::CircleDirichletFree | ModelKind::CircleNeumannFree | ModelKind::DiskNeumannRobin) => Some(1.0),
        (Entity::ImWeylAtZ, ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell) => Some(1.0),
        // resolvent difference in S_{1/2}
        (Entity::KreinDifference, ModelKind::DiskDirichletRobin) => Some(2.0),
        // S_{(n-1)/3}
        (Entity::KreinDifference, ModelKind::DiskNeumannRobin | ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell) => Some(3.0 / (n - 1.0)),
        // S_{(n-1)/2}
        (Entity::KreinDifference, ModelKind::CircleDirichletFree | ModelKind::CircleNeumannFree) => Some(2.0 / (n - 1.0)),
        // γ in S_{2(n-1)/3}, the factor exponent from 1/p + 1/q = 1/r
        (Entity::GammaField, ModelKind::DiskNeumannRobin | ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell) => Some(3.0 / (2.0 * (n - 1.0))),
        _ => None,
    }
}

/// Verdict for an upper bound s_j ≤ C·j^{-p}.
///
/// The constant is calibrated on the head half (j ≤ n/2) and must hold on
/// the tail half. Sequences that decay at least as fast as j^{-p} pass;
/// slower decay makes s_j·j^p grow and fails. The sequence must also be
/// finite and non-increasing.
pub fn bound_verdict(s: &[f64], p: f64) -> (f64, f64, Verdict) {
    let weighted: Vec<f64> = s.iter().enumerate().map(|(i, v)| v * ((i + 1) as f64).powf(p)).collect();
    let half = (s.len() / 2).max(1).min(s.len());
    let head = weighted[..half].iter().copied().fold(0.0, f64::max);
    let tail = weighted[half..].iter().copied().fold(0.0, f64::max);
    let finite = s.iter().all(|v| v.is_finite() && *v >= 0.0);
    let monotone = s.windows(2).all(|w| w[1] <= w[0]);
    let ok = finite && monotone && head.is_finite() && tail <= head;
    (head, tail, if ok { Verdict::Pass } else { Verdict::Fail })
}

/// Slope of -log s against log j over the tail half, ignoring zeros.
pub fn fit_exponent(s: &[f64]) -> Option<f64> {
    let start = s.len() / 2;
    let pts: Vec<(f64, f64)> = s.iter().enumerate().skip(start).filter(|(_, v)| **v > 0.0).map(|(i, v)| (((i + 1) as f64).ln(), v.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}

/// Decay report for given singular values (sorted here).
pub fn decay_report(entity: Entity, model: &str, z: Complex64, mut s: Vec<f64>, p: f64) -> Result<DecayReport, SchattenError> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(SchattenError::BadExponent(p));
    }
    s.sort_by(|a, b| b.total_cmp(a));
    let (head, tail, verdict) = bound_verdict(&s, p);
    Ok(DecayReport {
        entity,
        model: model.to_string(),
        z,
        fitted_exponent: fit_exponent(&s),
        singular_values: s,
        predicted_exponent: p,
        head_constant: head,
        tail_constant: tail,
        verdict,
    })
}

/// Singular values of an entity on the truncation with angular order up
/// to `max_order` (|m| ≤ max_order on circles, l ≤ max_order on spheres).
///
/// For mode-diagonal models each mode contributes one singular value:
/// |Im M_m| for Im M, ‖γ_m(z)‖ = (Im M_m/Im z)^{1/2} for γ, and for the
/// rank-one mode block of -γ M⁻¹ γ(z̄)* the product
/// ‖γ_m(z)‖·‖γ_m(z̄)‖/|M_m| = Im M_m/(Im z·|M_m|).
pub fn entity_singular_values(entity: Entity, model: &ModelHandle, z: Complex64, max_order: usize) -> Result<Vec<f64>, SchattenError> {
    if z.im == 0.0 {
        return Err(SchattenError::RealPoint(z));
    }
    let trunc = model.kind().truncation(max_order);
    let point = SpectralPoint::from_complex(z)?;
    let diag = match model.mode_symbols(point, &trunc, SymbolKind::WeylM) {
        Ok(t) => Some(t.values()),
        Err(ZooError::Weyl(WeylError::ModelDomainError(_))) if model.params().alpha.has_zero() => None,
        Err(ZooError::Weyl(WeylError::ModelDomainError(_))) if !model.params().alpha.is_diagonal() => None,
        Err(e) => return Err(e.into()),
    };
    let y = z.im.abs();
    if let Some(d) = diag {
        return Ok(d
            .iter()
            .map(|m| {
                let im = m.im.abs();
                match entity {
                    Entity::ImWeylAtZ => im,
                    Entity::GammaField => (im / y).sqrt(),
                    Entity::KreinDifference => im / (y * m.norm()),
                }
            })
            .collect());
    }
    if trunc.n() > DENSE_CAP {
        return Err(SchattenError::ModelNotDiagonal(model.kind().to_string()));
    }
    let m = model.weyl(z, &trunc)?;
    let im = m.imag_part();
    let mat = match entity {
        Entity::ImWeylAtZ => im,
        Entity::GammaField => numkernel::psd_sqrt_default(&im.scale_real(1.0 / y))?,
        Entity::KreinDifference => {
            // G M⁻¹ G with G = (Im M/Im z)^{1/2} has the singular values of
            // γ M⁻¹ γ(z̄)*
            let g = numkernel::psd_sqrt_default(&im.scale_real(1.0 / y))?;
            let minv = numkernel::LuFactors::factor(&m)?.inverse();
            &(&g * &minv) * &g
        }
    };
    Ok(singular_values(&mat)?)
}

/// Full diagnostic for one (entity, model, z) with the predicted exponent
/// for the pair unless `exponent` overrides it.
pub fn sv_decay(entity: Entity, model: &ModelHandle, z: Complex64, max_order: usize, exponent: Option<f64>) -> Result<DecayReport, SchattenError> {
    let p = exponent
        .or_else(|| predicted_exponent(entity, model.kind()))
        .ok_or_else(|| SchattenError::BadExponent(f64::NAN))?;
    let s = entity_singular_values(entity, model, z, max_order)?;
    decay_report(entity, model.kind().id(), z, s, p)
}

/// Helper for callers holding a bare matrix.
pub fn matrix_decay(entity: Entity, name: &str, z: Complex64, m: &ComplexMatrix, p: f64) -> Result<DecayReport, SchattenError> {
    decay_report(entity, name, z, singular_values(m)?, p)
}
