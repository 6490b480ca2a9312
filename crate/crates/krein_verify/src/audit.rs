use num_complex::Complex64;
use serde::Serialize;

use crate::{KreinError, KreinModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaIdentity {
    /// M(z) - M(ξ)* = (z - ξ̄)·γ(ξ)*γ(z).
    Gutgut,
    /// Im M(z) = Im z·γ(z)*γ(z).
    Imm,
    /// γ(z) = (I + (z - ξ)(A₀ - z)⁻¹)γ(ξ).
    Gform1,
    /// (T - z)γ(z) = 0 away from the boundary.
    Range,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaAuditRow {
    pub identity: GammaIdentity,
    pub z: Complex64,
    /// Second point of the pair; equal to `z` for one-point identities.
    pub xi: Complex64,
    /// Absolute for the scalar identities, relative to ‖γ(z)‖ for the
    /// vector ones.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaAudit {
    pub model: String,
    pub rows: Vec<GammaAuditRow>,
}

impl GammaAudit {
    pub fn max_residual(&self, identity: GammaIdentity) -> f64 {
        self.rows.iter().filter(|r| r.identity == identity).map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// Residuals of the γ/M identities over all ordered pairs from `z_list`.
pub fn gamma_field_audit(model: &dyn KreinModel, z_list: &[Complex64]) -> Result<GammaAudit, KreinError> {
    let gammas: Vec<Vec<Complex64>> = z_list.iter().map(|&z| model.gamma(z).map(|g| g.gamma)).collect::<Result<_, _>>()?;
    let weyls: Vec<Complex64> = z_list.iter().map(|&z| model.weyl(z)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (i, &z) in z_list.iter().enumerate() {
        let gz = &gammas[i];
        let gnorm = model.norm(gz);
        rows.push(GammaAuditRow { identity: GammaIdentity::Imm, z, xi: z, residual: (weyls[i].im - z.im * gnorm * gnorm).abs() });
        rows.push(GammaAuditRow { identity: GammaIdentity::Range, z, xi: z, residual: model.defect_residual(z, gz) });
        for (j, &xi) in z_list.iter().enumerate() {
            let gx = &gammas[j];
            let lhs = weyls[i] - weyls[j].conj();
            let rhs = (z - xi.conj()) * model.inner(gx, gz);
            rows.push(GammaAuditRow { identity: GammaIdentity::Gutgut, z, xi, residual: (lhs - rhs).norm() });
            let r = model.resolvent_apply(z, false, gx)?;
            let diff: Vec<Complex64> = gz.iter().zip(gx).zip(&r).map(|((a, b), c)| a - b - (z - xi) * c).collect();
            rows.push(GammaAuditRow { identity: GammaIdentity::Gform1, z, xi, residual: model.norm(&diff) / gnorm });
        }
    }
    Ok(GammaAudit { model: model.name(), rows })
}
