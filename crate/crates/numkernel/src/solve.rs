use num_complex::Complex64;

use crate::{ComplexMatrix, LinalgError};

/// Condition estimates above this are reported as singular by [`solve`].
pub const DEFAULT_CONDITION_CAP: f64 = 1e12;
/// Pivots smaller than this in magnitude mean the matrix is singular.
pub const PIVOT_THRESHOLD: f64 = 1e-300;

/// Result of a linear solve together with the 1-norm condition estimate.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: ComplexMatrix,
    pub condition: f64,
}

/// LU factorization with partial pivoting, PA = LU.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    a_one_norm: f64,
}

impl LuFactors {
    pub fn factor(a: &ComplexMatrix) -> Result<Self, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::DimensionMismatch(format!("LU needs a square matrix, got {}x{}", a.rows(), a.cols())));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n).map(|i| (i, lu[(i, k)].norm())).fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pmax >= PIVOT_THRESHOLD) {
                return Err(LinalgError::SingularMatrix { condition: f64::INFINITY });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm, a_one_norm: a.one_norm() })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Solve A x = b.
    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * y[j];
            }
            y[i] = s / self.lu[(i, i)];
        }
        y
    }

    /// Solve A* x = b.
    pub fn solve_adjoint_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut t = b.to_vec();
        // U* t = b (U* is lower triangular)
        for i in 0..n {
            let mut s = t[i];
            for j in 0..i {
                s -= self.lu[(j, i)].conj() * t[j];
            }
            t[i] = s / self.lu[(i, i)].conj();
        }
        // L* s = t (unit upper triangular)
        for i in (0..n).rev() {
            let mut s = t[i];
            for j in i + 1..n {
                s -= self.lu[(j, i)].conj() * t[j];
            }
            t[i] = s;
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = t[i];
        }
        x
    }

    pub fn solve_matrix(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.rows(), self.dim());
        let mut x = ComplexMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.col(j));
            x.set_col(j, &col);
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve_matrix(&ComplexMatrix::identity(self.dim()))
    }

    /// Hager-Higham estimate of ‖A‖₁‖A⁻¹‖₁.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        let one = Complex64::new(1.0, 0.0);
        let mut x = vec![one / n as f64; n];
        let mut est = 0.0;
        for iter in 0..5 {
            let y = self.solve_vec(&x);
            let e: f64 = y.iter().map(|z| z.norm()).sum();
            if iter > 0 && e <= est {
                break;
            }
            est = e;
            let xi: Vec<Complex64> = y.iter().map(|z| if z.norm() > 0.0 { z / z.norm() } else { one }).collect();
            let w = self.solve_adjoint_vec(&xi);
            let (j, wmax) = w.iter().enumerate().map(|(i, z)| (i, z.norm())).fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
            let wx: Complex64 = w.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
            if iter > 0 && wmax <= wx.re {
                break;
            }
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j] = one;
        }
        // Alternating-sign probe guards against the known failure cases.
        let alt: Vec<Complex64> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                let frac = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                Complex64::new(s * (1.0 + frac), 0.0)
            })
            .collect();
        let y = self.solve_vec(&alt);
        let alt_est = 2.0 * y.iter().map(|z| z.norm()).sum::<f64>() / (3.0 * n as f64);
        est.max(alt_est) * self.a_one_norm
    }
}

/// Solve A X = B with the default condition cap.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Solution, LinalgError> {
    solve_with_cap(a, b, DEFAULT_CONDITION_CAP)
}

/// Solve A X = B, refusing matrices whose 1-norm condition estimate
/// exceeds `cap`.
pub fn solve_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: f64) -> Result<Solution, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!("A is {}x{}, B has {} rows", a.rows(), a.cols(), b.rows())));
    }
    let lu = LuFactors::factor(a)?;
    let condition = lu.condition_estimate();
    if !(condition <= cap) {
        return Err(LinalgError::SingularMatrix { condition });
    }
    Ok(Solution { x: lu.solve_matrix(b), condition })
}
