//! Stationary representation of the scattering matrix on the half-line
//! Jacobi chain, as an independent route to S(λ).
//!
//! With A = A₀ the free chain, B the perturbed one, φ(t) = (t+i)/(t-i),
//! C = γ(-i), G = -M(i)⁻¹ and Q = φ(A)CG, the resolvent difference
//! factorizes as (B-i)⁻¹ - (A-i)⁻¹ = QC*. The spectral density of C is
//! K(λ) = lim (1/π)·Im⟨C, (A-λ-iε)⁻¹C⟩, and
//!
//! Z(λ) = Q*Q/(λ+i) + φ(λ)G/(λ+i)² + lim Q*(B-λ-iε)⁻¹Q,
//! S(λ) = I + 2πi(1+λ²)²·√K·Z·√K.
//!
//! Resolvents are applied on a chain of finite length whose far end
//! carries the exact tail (transparent closure), so each ε-sample is the
//! compression of the half-infinite resolvent. The ε → 0 limits are taken
//! by Richardson extrapolation, and every quantity is recomputed on a
//! chain of twice the length to expose truncation effects.

use std::f64::consts::PI;

use model_zoo::jacobi::{m_at, BAND_EDGE};
use model_zoo::{Closure, JacobiChain};
use num_complex::Complex64;
use numkernel::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scatter_engine::{eigenphases, ScatteringMatrixSample};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use weyl_core::{richardson, EpsSchedule, WeylError};

/// Default chain length.
pub const DEFAULT_SITES: usize = 4000;
/// Largest allowed change of K or Z when the chain length doubles.
pub const DOUBLING_TOL: f64 = 1e-9;
/// Gate on the factorization residual.
pub const FACTORIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StationaryError {
    #[error("truncation of {sites} sites too small: value changed by {change:.3e} on doubling")]
    TruncationTooSmall { sites: usize, change: f64 },
    #[error("factorization residual {residual:.3e} exceeds {FACTORIZATION_TOL:e}")]
    FactorizationResidual { residual: f64 },
    #[error("λ = {0} is outside the open band (-2, 2)")]
    OutsideBand(f64),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryConfig {
    pub sites: usize,
    pub schedule: EpsSchedule,
    pub doubling_tol: f64,
}

impl Default for StationaryConfig {
    fn default() -> Self {
        Self { sites: DEFAULT_SITES, schedule: EpsSchedule::default(), doubling_tol: DOUBLING_TOL }
    }
}

/// φ(t) = (t+i)/(t-i).
pub fn phi(t: f64) -> Complex64 {
    let i = Complex64::i();
    (t + i) / (t - i)
}

/// C, G and Q on a chain of a given length.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryFactorization {
    pub sites: usize,
    /// γ(-i) = (A+i)⁻¹δ₀.
    pub c: Vec<Complex64>,
    /// -M(i)⁻¹.
    pub g: Complex64,
    /// φ(A)·C·G.
    pub q: Vec<Complex64>,
    /// max over probes of ‖[(B-i)⁻¹ - (A-i)⁻¹ - QC*]f‖/‖f‖.
    pub residual: f64,
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm(u: &[Complex64]) -> f64 {
    dot(u, u).re.sqrt()
}

impl StationaryFactorization {
    pub fn new(chain: &JacobiChain, sites: usize) -> Self {
        let i = Complex64::i();
        let apply = |z: Complex64, perturbed: bool, f: &[Complex64]| chain.resolvent_apply(z, perturbed, Closure::Transparent, f);
        let mut e0 = vec![Complex64::new(0.0, 0.0); sites];
        e0[0] = Complex64::new(1.0, 0.0);
        let c = apply(-i, false, &e0);
        let g = -chain.weyl_inverse(i);
        // φ(A)C = C + 2i(A-i)⁻¹C
        let ac = apply(i, false, &c);
        let q: Vec<Complex64> = c.iter().zip(&ac).map(|(cv, av)| (cv + 2.0 * i * av) * g).collect();

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut probes: Vec<Vec<Complex64>> = (0..sites.min(32))
            .map(|j| {
                let mut f = vec![Complex64::new(0.0, 0.0); sites];
                f[j] = Complex64::new(1.0, 0.0);
                f
            })
            .collect();
        for _ in 0..8 {
            probes.push((0..sites).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
        }
        let mut residual: f64 = 0.0;
        for f in &probes {
            let rb = apply(i, true, f);
            let ra = apply(i, false, f);
            let cf = dot(&c, f);
            let diff: Vec<Complex64> = rb.iter().zip(&ra).zip(&q).map(|((b, a), qv)| b - a - qv * cf).collect();
            residual = residual.max(norm(&diff) / norm(f));
        }
        Self { sites, c, g, q, residual }
    }

    /// Q*Q directly and as (M(-i)⁻¹ - M(i)⁻¹)/(2i).
    pub fn q_star_q(&self, chain: &JacobiChain) -> (Complex64, Complex64) {
        let i = Complex64::i();
        let direct = dot(&self.q, &self.q);
        let via_weyl = (chain.weyl_inverse(-i) - chain.weyl_inverse(i)) / (2.0 * i);
        (direct, via_weyl)
    }
}

/// K(λ) with its extrapolation error.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensitySample {
    pub lambda: f64,
    /// 1×1 Hermitian PSD.
    pub k: ComplexMatrix,
    pub extrapolation_error: f64,
    /// |Im M(λ+i0) - π(1+λ²)K|.
    pub im_m_residual: f64,
}

/// Z(λ) from the stationary formula next to -M(λ+i0)⁻¹/(1+λ²).
#[derive(Debug, Clone, PartialEq)]
pub struct ZSample {
    pub lambda: f64,
    pub stationary: ComplexMatrix,
    pub from_weyl: ComplexMatrix,
    pub residual: f64,
    pub extrapolation_error: f64,
}

/// The stationary route on the Jacobi chain with coupling α.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryModel {
    pub chain: JacobiChain,
    pub config: StationaryConfig,
    factorization: StationaryFactorization,
    doubled: StationaryFactorization,
}

impl StationaryModel {
    pub fn new(alpha: f64, config: StationaryConfig) -> Result<Self, StationaryError> {
        let chain = JacobiChain::new(alpha);
        let factorization = StationaryFactorization::new(&chain, config.sites);
        if !(factorization.residual <= FACTORIZATION_TOL) {
            return Err(StationaryError::FactorizationResidual { residual: factorization.residual });
        }
        let doubled = StationaryFactorization::new(&chain, 2 * config.sites);
        Ok(Self { chain, config, factorization, doubled })
    }

    pub fn factorization(&self) -> &StationaryFactorization {
        &self.factorization
    }

    fn doubling(&self, a: Complex64, b: Complex64) -> Result<(), StationaryError> {
        let change = (a - b).norm();
        if change > self.config.doubling_tol * (1.0 + b.norm()) {
            return Err(StationaryError::TruncationTooSmall { sites: self.config.sites, change });
        }
        Ok(())
    }

    fn k_on(&self, f: &StationaryFactorization, lambda: f64) -> Result<(Complex64, f64), StationaryError> {
        let ex = richardson(&self.config.schedule, |eps| {
            let r = self.chain.resolvent_apply(Complex64::new(lambda, eps), false, Closure::Transparent, &f.c);
            Ok(ComplexMatrix::scalar(Complex64::new(dot(&f.c, &r).im / PI, 0.0)))
        })?;
        Ok((ex.value[(0, 0)], ex.error_estimate))
    }

    /// K(λ) = lim (1/π)·Im⟨C, (A-λ-iε)⁻¹C⟩; zero outside the band.
    pub fn spectral_density(&self, lambda: f64) -> Result<SpectralDensitySample, StationaryError> {
        if lambda.abs() >= BAND_EDGE {
            return Ok(SpectralDensitySample { lambda, k: ComplexMatrix::zeros(1, 1), extrapolation_error: 0.0, im_m_residual: 0.0 });
        }
        let (k, err) = self.k_on(&self.factorization, lambda)?;
        let (k2, _) = self.k_on(&self.doubled, lambda)?;
        self.doubling(k, k2)?;
        let im_m = m_at(Complex64::new(lambda, 0.0)).im;
        let im_m_residual = (im_m - PI * (1.0 + lambda * lambda) * k.re).abs();
        Ok(SpectralDensitySample { lambda, k: ComplexMatrix::scalar(Complex64::new(k.re, 0.0)), extrapolation_error: err, im_m_residual })
    }

    fn z_on(&self, f: &StationaryFactorization, lambda: f64) -> Result<(Complex64, f64), StationaryError> {
        let i = Complex64::i();
        let li = lambda + i;
        let closed = dot(&f.q, &f.q) / li + phi(lambda) * f.g / (li * li);
        let ex = richardson(&self.config.schedule, |eps| {
            let r = self.chain.resolvent_apply(Complex64::new(lambda, eps), true, Closure::Transparent, &f.q);
            Ok(ComplexMatrix::scalar(dot(&f.q, &r)))
        })?;
        Ok((closed + ex.value[(0, 0)], ex.error_estimate))
    }

    /// Z(λ) from the stationary formula, compared with -M(λ+i0)⁻¹/(1+λ²).
    pub fn z_function(&self, lambda: f64) -> Result<ZSample, StationaryError> {
        if lambda.abs() >= BAND_EDGE {
            return Err(StationaryError::OutsideBand(lambda));
        }
        let (z, err) = self.z_on(&self.factorization, lambda)?;
        let (z2, _) = self.z_on(&self.doubled, lambda)?;
        self.doubling(z, z2)?;
        let from_weyl = -self.chain.weyl_inverse(Complex64::new(lambda, 0.0)) / (1.0 + lambda * lambda);
        Ok(ZSample {
            lambda,
            stationary: ComplexMatrix::scalar(z),
            from_weyl: ComplexMatrix::scalar(from_weyl),
            residual: (z - from_weyl).norm(),
            extrapolation_error: err,
        })
    }

    /// S(λ) = I + 2πi(1+λ²)²·√K·Z·√K, one channel inside the band and
    /// none outside.
    pub fn stationary_smatrix(&self, lambda: f64) -> Result<ScatteringMatrixSample, StationaryError> {
        if lambda.abs() >= BAND_EDGE {
            return Ok(ScatteringMatrixSample {
                lambda,
                s: ComplexMatrix::identity(0),
                channel_isometry: ComplexMatrix::zeros(1, 0),
                channel_labels: Vec::new(),
                unitarity_defect: 0.0,
                eigenphases: Vec::new(),
                flagged: false,
                condition: 1.0,
            });
        }
        let k = self.spectral_density(lambda)?.k[(0, 0)].re;
        let z = self.z_function(lambda)?.stationary[(0, 0)];
        let w = 1.0 + lambda * lambda;
        let s = Complex64::new(1.0, 0.0) + 2.0 * PI * Complex64::i() * w * w * k * z;
        let sm = ComplexMatrix::scalar(s);
        let defect = (s.norm_sqr() - 1.0).abs();
        Ok(ScatteringMatrixSample {
            lambda,
            eigenphases: eigenphases(&sm).map(|v| v.into_iter().map(|(p, _)| p).collect()).unwrap_or_default(),
            s: sm,
            channel_isometry: ComplexMatrix::identity(1),
            channel_labels: vec!["s".into()],
            unitarity_defect: defect,
            flagged: defect > 1e-6,
            condition: 1.0,
        })
    }
}

/// The classical rank-one formula S = (1 + α·m(λ-i0))/(1 + α·m(λ+i0)).
pub fn rank_one_smatrix(alpha: f64, lambda: f64) -> Complex64 {
    let m = m_at(Complex64::new(lambda, 0.0));
    (1.0 + alpha * m.conj()) / (1.0 + alpha * m)
}
