use num_complex::Complex64;
use numkernel::singular_values;
use serde::Serialize;

use crate::{evaluate_weyl, min_im_eigenvalue, ChannelTruncation, SpectralPoint, WeylModel};

#[derive(Debug, Clone, Serialize)]
pub struct AuditPoint {
    pub z: Complex64,
    pub min_im_eigenvalue: f64,
    /// ‖M(z̄) - M(z)*‖_F / (1 + ‖M(z)‖_F), when the model evaluates at z̄.
    pub conj_residual: Option<f64>,
    pub error: Option<String>,
}

/// Singular values of Im M at the first grid point for one truncation.
#[derive(Debug, Clone, Serialize)]
pub struct DecayRow {
    pub n: usize,
    pub singular_values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NevanlinnaAudit {
    pub model: String,
    pub points: Vec<AuditPoint>,
    pub min_im_eigenvalue: f64,
    /// Every point evaluated and Im M > 0 at each of them.
    pub strict: bool,
    pub max_conj_residual: f64,
    pub decay: Vec<DecayRow>,
}

/// Report-only audit of the Nevanlinna structure of a model on a grid in
/// the open upper half-plane.
pub fn nevanlinna_audit(
    model: &dyn WeylModel,
    grid: &[SpectralPoint],
    trunc: &ChannelTruncation,
    decay_truncations: &[ChannelTruncation],
) -> NevanlinnaAudit {
    let mut points = Vec::with_capacity(grid.len());
    for p in grid {
        let z = p.z();
        let entry = match evaluate_weyl(model, *p, trunc) {
            Ok(s) => {
                let min = min_im_eigenvalue(&s.m).unwrap_or(f64::NAN);
                let conj = model
                    .weyl(z.conj(), trunc)
                    .ok()
                    .map(|mb| (&mb - &s.m.adjoint()).frobenius_norm() / (1.0 + s.m.frobenius_norm()));
                AuditPoint { z, min_im_eigenvalue: min, conj_residual: conj, error: None }
            }
            Err(e) => AuditPoint { z, min_im_eigenvalue: f64::NAN, conj_residual: None, error: Some(e.to_string()) },
        };
        points.push(entry);
    }
    let min = points.iter().map(|p| p.min_im_eigenvalue).fold(f64::INFINITY, |a, b| if b.is_nan() { f64::NAN } else { a.min(b) });
    let strict = !points.is_empty() && points.iter().all(|p| p.error.is_none() && p.min_im_eigenvalue > 0.0);
    let max_conj = points.iter().filter_map(|p| p.conj_residual).fold(0.0, f64::max);
    let mut decay = Vec::new();
    if let Some(p) = grid.first() {
        for t in decay_truncations {
            if let Ok(s) = evaluate_weyl(model, *p, t) {
                if let Ok(sv) = singular_values(&s.m.imag_part()) {
                    decay.push(DecayRow { n: t.n(), singular_values: sv });
                }
            }
        }
    }
    NevanlinnaAudit { model: model.name(), points, min_im_eigenvalue: min, strict, max_conj_residual: max_conj, decay }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ConstantWeyl;
    use numkernel::{c64, ComplexMatrix};

    #[test]
    fn constant_i_audit() {
        let model = ConstantWeyl { value: ComplexMatrix::scalar(c64(0.0, 1.0)) };
        let grid: Vec<SpectralPoint> = (0..5).map(|k| SpectralPoint::new(k as f64 - 2.0, 0.5).unwrap()).collect();
        let a = nevanlinna_audit(&model, &grid, &ChannelTruncation::scalar(), &[ChannelTruncation::scalar()]);
        assert!(a.strict);
        assert_eq!(a.min_im_eigenvalue, 1.0);
        assert_eq!(a.max_conj_residual, 0.0);
        assert_eq!(a.decay[0].singular_values, vec![1.0]);
    }
}
