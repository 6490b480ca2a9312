//! Finite-difference δ-interaction on a segment [-L/2, L/2] with Dirichlet
//! ends: A₀ = -D² (three-point stencil) and B = A₀ - (α/h)·e_c e_cᵀ at the
//! centre node x = 0. Vectors are grid samples; inner products carry the
//! weight h.

use num_complex::Complex64;

use crate::jacobi::solve_tridiagonal;
use crate::symbols::sqrt_upper;
use crate::ZooError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdDeltaLine {
    pub alpha: f64,
    pub length: f64,
    pub h: f64,
    cells: usize,
}

impl FdDeltaLine {
    /// `length / h` must be an even integer so that x = 0 is a node.
    pub fn new(alpha: f64, length: f64, h: f64) -> Result<Self, ZooError> {
        if !(alpha.is_finite() && length > 0.0 && h > 0.0 && h < length) {
            return Err(ZooError::InvalidParameters(format!("bad grid L = {length}, h = {h}, α = {alpha}")));
        }
        let ratio = length / h;
        let cells = ratio.round() as usize;
        if (ratio - cells as f64).abs() > 1e-9 * ratio || cells % 2 != 0 {
            return Err(ZooError::InvalidParameters(format!("L/h = {ratio} is not an even integer")));
        }
        Ok(Self { alpha, length, h, cells })
    }

    /// Interior nodes.
    pub fn nodes(&self) -> Vec<f64> {
        (1..self.cells).map(|j| -0.5 * self.length + j as f64 * self.h).collect()
    }

    pub fn len(&self) -> usize {
        self.cells - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of x = 0 among the nodes.
    pub fn centre(&self) -> usize {
        self.cells / 2 - 1
    }

    /// (A - z)⁻¹ rhs with A = B if `perturbed`, else A₀.
    pub fn resolvent_apply(&self, z: Complex64, perturbed: bool, rhs: &[Complex64]) -> Vec<Complex64> {
        let h2 = self.h * self.h;
        let mut diag = vec![Complex64::new(2.0, 0.0) - z * h2; self.len()];
        if perturbed {
            diag[self.centre()] -= self.alpha * self.h;
        }
        let scaled: Vec<Complex64> = rhs.iter().map(|v| v * h2).collect();
        solve_tridiagonal(&diag, -1.0, &scaled)
    }

    /// The continuum γ(z): x ↦ e^{ik|x|}/(-2ik) on the nodes.
    pub fn gamma(&self, z: Complex64) -> Vec<Complex64> {
        let k = sqrt_upper(z);
        let i = Complex64::i();
        self.nodes().iter().map(|x| (i * k * x.abs()).exp() / (-2.0 * i * k)).collect()
    }

    /// Weighted inner product h·Σ conj(u)v.
    pub fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<Complex64>() * self.h
    }
}
