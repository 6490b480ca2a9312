use num_complex::Complex64;
use model_zoo::{Closure, FdDeltaLine, JacobiChain};
use model_zoo::symbols::sqrt_upper;

use crate::KreinError;

/// γ(z) sampled on the discretized state space, one column per boundary
/// dimension (both models here have a one-dimensional boundary space).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSample {
    pub z: Complex64,
    pub gamma: Vec<Complex64>,
}

/// A model with a scalar Weyl function whose operators A₀ (unperturbed)
/// and A₁ (perturbed) have resolvents that can be applied on a finite
/// state space.
pub trait KreinModel: Send + Sync {
    fn name(&self) -> String;
    fn state_dim(&self) -> usize;
    fn resolvent_apply(&self, z: Complex64, perturbed: bool, f: &[Complex64]) -> Result<Vec<Complex64>, KreinError>;
    fn gamma(&self, z: Complex64) -> Result<GammaSample, KreinError>;
    fn weyl(&self, z: Complex64) -> Result<Complex64, KreinError>;
    /// M(z)⁻¹, finite also where M itself is not (decoupled limit).
    fn weyl_inverse(&self, z: Complex64) -> Result<Complex64, KreinError>;
    /// State-space inner product ⟨u, v⟩, antilinear in u.
    fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64;
    /// ‖(T - z)u‖ on the rows where the maximal operator T acts without
    /// boundary terms, divided by ‖u‖ on those rows.
    fn defect_residual(&self, z: Complex64, u: &[Complex64]) -> f64;
    /// Index range, away from the boundary and the truncation edge, used
    /// for probe vectors.
    fn probe_window(&self) -> std::ops::Range<usize>;

    fn norm(&self, u: &[Complex64]) -> f64 {
        self.inner(u, u).re.max(0.0).sqrt()
    }
}

fn check_z(z: Complex64) -> Result<(), KreinError> {
    if z.im == 0.0 || !(z.re.is_finite() && z.im.is_finite()) {
        return Err(KreinError::ResolventUnavailable(format!("z = {z} is not in the resolvent set of both operators")));
    }
    Ok(())
}

/// The half-line chain cut after `sites` sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiDiscretization {
    pub chain: JacobiChain,
    pub sites: usize,
    pub closure: Closure,
}

impl JacobiDiscretization {
    pub fn new(alpha: f64, sites: usize) -> Self {
        Self { chain: JacobiChain::new(alpha), sites, closure: Closure::Dirichlet }
    }

    pub fn with_closure(mut self, closure: Closure) -> Self {
        self.closure = closure;
        self
    }
}

impl KreinModel for JacobiDiscretization {
    fn name(&self) -> String {
        format!("jacobi-halfline(N={})", self.sites)
    }

    fn state_dim(&self) -> usize {
        self.sites
    }

    fn resolvent_apply(&self, z: Complex64, perturbed: bool, f: &[Complex64]) -> Result<Vec<Complex64>, KreinError> {
        check_z(z)?;
        if f.len() != self.sites {
            return Err(KreinError::InvalidProbe { expected: self.sites, got: f.len() });
        }
        Ok(self.chain.resolvent_apply(z, perturbed, self.closure, f))
    }

    fn gamma(&self, z: Complex64) -> Result<GammaSample, KreinError> {
        check_z(z)?;
        Ok(GammaSample { z, gamma: self.chain.gamma(z, self.sites) })
    }

    fn weyl(&self, z: Complex64) -> Result<Complex64, KreinError> {
        check_z(z)?;
        self.chain.weyl(z).map_err(|_| KreinError::SingularWeylValue { z_re: z.re, z_im: z.im })
    }

    fn weyl_inverse(&self, z: Complex64) -> Result<Complex64, KreinError> {
        check_z(z)?;
        Ok(self.chain.weyl_inverse(z))
    }

    fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
    }

    fn defect_residual(&self, z: Complex64, u: &[Complex64]) -> f64 {
        let n = u.len();
        if n < 3 {
            return 0.0;
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 1..n - 1 {
            num += (u[i - 1] + u[i + 1] - z * u[i]).norm_sqr();
            den += u[i].norm_sqr();
        }
        (num / den).sqrt()
    }

    fn probe_window(&self) -> std::ops::Range<usize> {
        0..self.sites.min(64)
    }
}

/// The finite-difference δ-interaction with the continuum γ and M as the
/// target of the comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdDeltaLineDiscretization {
    pub grid: FdDeltaLine,
}

impl FdDeltaLineDiscretization {
    pub fn new(alpha: f64, length: f64, h: f64) -> Result<Self, KreinError> {
        Ok(Self { grid: FdDeltaLine::new(alpha, length, h)? })
    }

    fn n(&self, z: Complex64) -> Complex64 {
        Complex64::i() / (2.0 * sqrt_upper(z))
    }
}

impl KreinModel for FdDeltaLineDiscretization {
    fn name(&self) -> String {
        format!("delta-line-fd(L={}, h={})", self.grid.length, self.grid.h)
    }

    fn state_dim(&self) -> usize {
        self.grid.len()
    }

    fn resolvent_apply(&self, z: Complex64, perturbed: bool, f: &[Complex64]) -> Result<Vec<Complex64>, KreinError> {
        check_z(z)?;
        if f.len() != self.grid.len() {
            return Err(KreinError::InvalidProbe { expected: self.grid.len(), got: f.len() });
        }
        Ok(self.grid.resolvent_apply(z, perturbed, f))
    }

    fn gamma(&self, z: Complex64) -> Result<GammaSample, KreinError> {
        check_z(z)?;
        Ok(GammaSample { z, gamma: self.grid.gamma(z) })
    }

    fn weyl(&self, z: Complex64) -> Result<Complex64, KreinError> {
        check_z(z)?;
        if self.grid.alpha == 0.0 {
            return Err(KreinError::SingularWeylValue { z_re: z.re, z_im: z.im });
        }
        Ok(self.n(z) - 1.0 / self.grid.alpha)
    }

    fn weyl_inverse(&self, z: Complex64) -> Result<Complex64, KreinError> {
        check_z(z)?;
        let a = self.grid.alpha;
        Ok(a / (a * self.n(z) - 1.0))
    }

    fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        self.grid.inner(u, v)
    }

    /// -u'' - zu on nodes away from x = 0, with the three-point stencil.
    fn defect_residual(&self, z: Complex64, u: &[Complex64]) -> f64 {
        let h2 = self.grid.h * self.grid.h;
        let c = self.grid.centre();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 1..u.len().saturating_sub(1) {
            if i.abs_diff(c) <= 1 {
                continue;
            }
            num += ((2.0 * u[i] - u[i - 1] - u[i + 1]) / h2 - z * u[i]).norm_sqr();
            den += u[i].norm_sqr();
        }
        (num / den).sqrt()
    }

    fn probe_window(&self) -> std::ops::Range<usize> {
        let c = self.grid.centre();
        let half = (5.0 / self.grid.h).round() as usize;
        c.saturating_sub(half)..(c + half + 1).min(self.grid.len())
    }
}
