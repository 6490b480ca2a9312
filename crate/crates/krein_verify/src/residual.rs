use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{FdDeltaLineDiscretization, KreinError, KreinModel};

/// max over probes of ‖[(A₁-z)⁻¹ - (A₀-z)⁻¹ + γ(z)M(z)⁻¹γ(z̄)*]f‖/‖f‖.
pub fn krein_residual(model: &dyn KreinModel, z: Complex64, probes: &[Vec<Complex64>]) -> Result<f64, KreinError> {
    let gamma = model.gamma(z)?.gamma;
    let gamma_bar = model.gamma(z.conj())?.gamma;
    let minv = model.weyl_inverse(z)?;
    if !(minv.re.is_finite() && minv.im.is_finite()) {
        return Err(KreinError::SingularWeylValue { z_re: z.re, z_im: z.im });
    }
    let mut worst: f64 = 0.0;
    for f in probes {
        if f.len() != model.state_dim() {
            return Err(KreinError::InvalidProbe { expected: model.state_dim(), got: f.len() });
        }
        let fnorm = model.norm(f);
        if fnorm == 0.0 {
            continue;
        }
        let r1 = model.resolvent_apply(z, true, f)?;
        let r0 = model.resolvent_apply(z, false, f)?;
        let c = minv * model.inner(&gamma_bar, f);
        let diff: Vec<Complex64> = r1.iter().zip(&r0).zip(&gamma).map(|((a, b), g)| a - b + g * c).collect();
        worst = worst.max(model.norm(&diff) / fnorm);
    }
    Ok(worst)
}

/// Complex Gaussian entries on the model's probe window, zero elsewhere.
pub fn random_probes(model: &dyn KreinModel, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = model.probe_window();
    (0..count)
        .map(|_| {
            let mut f = vec![Complex64::new(0.0, 0.0); model.state_dim()];
            for v in &mut f[window.clone()] {
                *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            f
        })
        .collect()
}

/// Smooth probes for grid models: sums of three Gaussians of width 0.5-1
/// with random centres in [-4, 4] and random complex amplitudes. They are
/// defined from node positions, so they are the same functions on every
/// grid.
pub fn bump_probes(model: &FdDeltaLineDiscretization, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = model.grid.nodes();
    (0..count)
        .map(|_| {
            let bumps: Vec<(f64, f64, Complex64)> = (0..3)
                .map(|_| (rng.gen_range(-4.0..4.0), rng.gen_range(0.5..1.0), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
                .collect();
            nodes.iter().map(|&x| bumps.iter().map(|(c, w, a)| a * (-((x - c) / w).powi(2)).exp()).sum()).collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KreinConvergenceRow {
    pub h: f64,
    pub residual: f64,
}

/// Krein residuals of the finite-difference δ-line under grid halving.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KreinConvergence {
    pub rows: Vec<KreinConvergenceRow>,
    /// residual(h)/residual(h/2) for consecutive rows.
    pub ratios: Vec<f64>,
    /// log₂ of the last ratio.
    pub observed_order: f64,
}

impl KreinConvergence {
    pub fn measure(alpha: f64, length: f64, steps: &[f64], z: Complex64, probes: usize, seed: u64) -> Result<Self, KreinError> {
        let mut rows = Vec::with_capacity(steps.len());
        for &h in steps {
            let model = FdDeltaLineDiscretization::new(alpha, length, h)?;
            let p = bump_probes(&model, probes, seed);
            rows.push(KreinConvergenceRow { h, residual: krein_residual(&model, z, &p)? });
        }
        let ratios: Vec<f64> = rows.windows(2).map(|w| w[0].residual / w[1].residual).collect();
        let observed_order = ratios.last().map(|r| r.log2()).unwrap_or(f64::NAN);
        Ok(Self { rows, ratios, observed_order })
    }
}
