//! Free Jacobi chain on ℓ²(ℕ₀) with unit hopping,
//! (A₀u)_n = u_{n-1} + u_{n+1} (u_{-1} = 0), and the rank-one perturbation
//! B = A₀ + α·δ₀δ₀*.
//!
//! m(z) = ⟨δ₀, (A₀ - z)⁻¹ δ₀⟩ solves m² + zm + 1 = 0; the root with
//! Im m > 0 on ℂ⁺ (equivalently m ≈ -1/z at infinity) is
//! m(z) = (-z + z·√(1 - 4/z²))/2 with the principal square root.
//! γ(z) = (A₀ - z)⁻¹δ₀ has entries (-1)^n m^{n+1}.

use num_complex::Complex64;
use numkernel::ComplexMatrix;
use weyl_core::{richardson, EpsSchedule, WeylError};

/// Band edges of the free chain.
pub const BAND_EDGE: f64 = 2.0;

/// m(z) for Im z ≠ 0.
pub fn m_function(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (-z + z * (one - 4.0 / (z * z)).sqrt()) * 0.5
}

/// m(λ + i0).
pub fn m_boundary(lambda: f64) -> Complex64 {
    if lambda.abs() < BAND_EDGE {
        Complex64::new(-lambda, (4.0 - lambda * lambda).sqrt()) * 0.5
    } else {
        Complex64::new((-lambda + lambda.signum() * (lambda * lambda - 4.0).sqrt()) * 0.5, 0.0)
    }
}

/// m at z, with Im z = 0 read as λ + i0.
pub fn m_at(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        m_boundary(z.re)
    } else {
        m_function(z)
    }
}

/// How the chain is cut at site N-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// u_N = 0.
    Dirichlet,
    /// The discarded tail is folded back exactly: its Schur complement adds
    /// -m(z) at the last site, so the finite system reproduces the
    /// half-infinite resolvent on sites 0..N-1.
    Transparent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiChain {
    pub alpha: f64,
}

impl JacobiChain {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    /// γ(z) on sites 0..len.
    pub fn gamma(&self, z: Complex64, len: usize) -> Vec<Complex64> {
        let m = m_at(z);
        let mut out = Vec::with_capacity(len);
        let mut p = m;
        for _ in 0..len {
            out.push(p);
            p *= -m;
        }
        out
    }

    /// M(z) = m(z) + 1/α; undefined for α = 0.
    pub fn weyl(&self, z: Complex64) -> Result<Complex64, WeylError> {
        if self.alpha == 0.0 {
            return Err(WeylError::ModelDomainError("α = 0: M = m + 1/α is undefined".into()));
        }
        Ok(m_at(z) + 1.0 / self.alpha)
    }

    /// M(z)⁻¹ = α/(1 + α·m(z)), defined also for α = 0.
    pub fn weyl_inverse(&self, z: Complex64) -> Complex64 {
        self.alpha / (1.0 + self.alpha * m_at(z))
    }

    /// (A - z)⁻¹ rhs on sites 0..rhs.len(), A = B if `perturbed`, else A₀.
    pub fn resolvent_apply(&self, z: Complex64, perturbed: bool, closure: Closure, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = rhs.len();
        let mut diag = vec![-z; n];
        if perturbed && n > 0 {
            diag[0] += self.alpha;
        }
        if closure == Closure::Transparent && n > 0 {
            diag[n - 1] -= m_at(z);
        }
        solve_tridiagonal(&diag, 1.0, rhs)
    }

    /// ⟨δ₀, (A₀,N - z)⁻¹ δ₀⟩ on a chain of n sites with a Dirichlet cut.
    pub fn truncated_m(&self, z: Complex64, n: usize) -> Complex64 {
        let mut e0 = vec![Complex64::new(0.0, 0.0); n];
        e0[0] = Complex64::new(1.0, 0.0);
        self.resolvent_apply(z, false, Closure::Dirichlet, &e0)[0]
    }

    /// m(λ + i0) from plain truncated resolvents, extrapolated in ε.
    /// Independent of the closed form; accurate to about 1e-7 inside the
    /// band for the default arguments.
    pub fn truncated_m_boundary(&self, lambda: f64, n: usize, schedule: &EpsSchedule) -> Result<(Complex64, f64), WeylError> {
        let ex = richardson(schedule, |eps| Ok(ComplexMatrix::scalar(self.truncated_m(Complex64::new(lambda, eps), n))))?;
        Ok((ex.value[(0, 0)], ex.error_estimate))
    }
}

/// Solve T x = rhs for the symmetric tridiagonal T with the given diagonal
/// and constant off-diagonal entries (Thomas algorithm, no pivoting).
pub fn solve_tridiagonal(diag: &[Complex64], off: f64, rhs: &[Complex64]) -> Vec<Complex64> {
    let n = diag.len();
    assert_eq!(rhs.len(), n);
    if n == 0 {
        return Vec::new();
    }
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    let mut piv = diag[0];
    c[0] = off / piv;
    d[0] = rhs[0] / piv;
    for i in 1..n {
        piv = diag[i] - c[i - 1] * off;
        c[i] = off / piv;
        d[i] = (rhs[i] - d[i - 1] * off) / piv;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn m_at_i() {
        let m = m_function(c(0.0, 1.0));
        assert!((m - c(0.0, (5f64.sqrt() - 1.0) / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn quadratic_and_branch() {
        for &z in &[c(0.3, 0.01), c(-1.7, 0.5), c(3.0, 1e-6), c(-3.0, 2.0), c(0.0, 1e-3)] {
            let m = m_function(z);
            assert!((m * m + z * m + 1.0).norm() < 1e-12);
            assert!(m.im > 0.0);
            assert!((m_function(z.conj()) - m.conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn boundary_matches_limit() {
        for &l in &[-1.5, -0.5, 0.0, 0.5, 1.5, 2.5, -3.0] {
            let a = m_boundary(l);
            let b = m_function(c(l, 1e-10));
            assert!((a - b).norm() < 1e-8, "{l}: {a} {b}");
        }
    }

    #[test]
    fn transparent_closure_is_exact() {
        let chain = JacobiChain::new(0.7);
        let z = c(0.4, 1e-4);
        let mut e0 = vec![c(0.0, 0.0); 50];
        e0[0] = c(1.0, 0.0);
        let g = chain.resolvent_apply(z, false, Closure::Transparent, &e0);
        let gam = chain.gamma(z, 50);
        for (a, b) in g.iter().zip(&gam) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn truncated_m_agrees() {
        let chain = JacobiChain::new(0.0);
        let z = c(0.5, 0.5);
        assert!((chain.truncated_m(z, 2000) - m_function(z)).norm() < 1e-13);
    }
}
