use num_complex::Complex64;

use crate::{ComplexMatrix, LinalgError};

const MAX_SWEEPS: usize = 80;

/// Singular values in descending order, by one-sided Jacobi rotations.
///
/// Works on whichever of A or A* has fewer columns; small singular values
/// keep high relative accuracy because A*A is never formed.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let work = if a.cols() > a.rows() { a.adjoint() } else { a.clone() };
    let (m, n) = (work.rows(), work.cols());
    // Column-major copy so rotations touch contiguous memory.
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| work.col(j)).collect();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let up = &mut left[p];
                let uq = &mut right[0];
                for i in 0..m {
                    let x = up[i];
                    let y = uq[i] * phase.conj();
                    up[i] = x * c - y * s;
                    uq[i] = (x * s + y * c) * phase;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(LinalgError::ConvergenceFailure { iterations: MAX_SWEEPS });
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_abs_sorted() {
        let a = ComplexMatrix::from_real_diag(&[3.0, -4.0, 0.0]);
        assert_eq!(singular_values(&a).unwrap(), vec![4.0, 3.0, 0.0]);
    }

    #[test]
    fn zero_matrix() {
        let a = ComplexMatrix::zeros(3, 5);
        assert_eq!(singular_values(&a).unwrap(), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn rank_one() {
        let u = [Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0)];
        let v = [Complex64::new(3.0, 0.0), Complex64::new(0.0, -4.0), Complex64::new(0.0, 0.0)];
        let a = ComplexMatrix::from_fn(2, 3, |i, j| u[i] * v[j].conj());
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 6.0f64.sqrt() * 5.0).abs() < 1e-13);
        assert!(s[1].abs() < 1e-13);
    }
}
