use num_complex::Complex64;

use crate::{ComplexMatrix, LinalgError};

/// Relative tolerance on ‖H - H*‖_F accepted by [`herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-12;
const MAX_QL_ITER: usize = 60;

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// the matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// V diag(f(w)) V*.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fw: Vec<f64> = self.eigenvalues.iter().map(|&w| f(w)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for (k, &x) in fw.iter().enumerate() {
                    if x != 0.0 {
                        s += v[(i, k)] * v[(j, k)].conj() * x;
                    }
                }
                out[(i, j)] = s;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|w| w)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// The input is Hermitized as (H + H*)/2 after checking that its asymmetry
/// is below `1e-12 * ‖H‖_F`. Exactly diagonal input is handled without
/// iteration, so its eigenvectors are exact coordinate vectors.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::DimensionMismatch(format!("herm_eig needs a square matrix, got {}x{}", h.rows(), h.cols())));
    }
    let norm = h.frobenius_norm();
    let asym = h.hermitian_defect();
    let tol = HERMITIAN_TOL * norm;
    if asym > tol {
        return Err(LinalgError::NonHermitianInput { asymmetry: asym, tolerance: tol });
    }
    let n = h.rows();
    if h.is_diagonal() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| h[(a, a)].re.total_cmp(&h[(b, b)].re).then(a.cmp(&b)));
        let eigenvalues = order.iter().map(|&i| h[(i, i)].re).collect();
        let mut v = ComplexMatrix::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            v[(i, col)] = Complex64::new(1.0, 0.0);
        }
        return Ok(HermitianEig { eigenvalues, eigenvectors: v });
    }
    let a = h.hermitian_part();
    let (q, d, e) = tridiagonalize(a);
    let (w, z) = tql2(d, e)?;
    // V = Q * Z, where Q already carries the phase scaling.
    let mut v = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let qik = q[(i, k)];
            if qik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                v[(i, j)] += qik * z[k * n + j];
            }
        }
    }
    Ok(HermitianEig { eigenvalues: w, eigenvectors: v })
}

/// Householder reduction to real symmetric tridiagonal form.
///
/// Returns (Q, d, e) with Q unitary such that Q* A Q is the real tridiagonal
/// matrix with diagonal `d` and off-diagonal `e` (`e[i]` couples i and i+1).
fn tridiagonalize(mut a: ComplexMatrix) -> (ComplexMatrix, Vec<f64>, Vec<f64>) {
    let n = a.rows();
    let mut q = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<Complex64> = (0..m).map(|i| a[(k + 1 + i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0] == zero { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // p = B v on the trailing block, K = v* p, w = p - K v.
        let mut p = vec![zero; m];
        for i in 0..m {
            let mut s = zero;
            for j in 0..m {
                s += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            p[i] = s;
        }
        let kk: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kk.re).collect();
        for i in 0..m {
            for j in 0..m {
                a[(k + 1 + i, k + 1 + j)] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = zero;
            a[(k, k + 1 + i)] = zero;
        }
        // Q <- Q (I - 2 v v*) on columns k+1..n.
        for r in 0..n {
            let mut s = zero;
            for j in 0..m {
                s += q[(r, k + 1 + j)] * v[j];
            }
            if s == zero {
                continue;
            }
            for j in 0..m {
                q[(r, k + 1 + j)] -= s * v[j].conj() * 2.0;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    // Phase scaling D so that D* T D is real; folded into Q.
    let mut delta = Complex64::new(1.0, 0.0);
    for i in 0..n.saturating_sub(1) {
        let off = a[(i + 1, i)];
        let mag = off.norm();
        e[i] = mag;
        let next = if mag > 0.0 { delta * off / mag } else { delta };
        for r in 0..n {
            q[(r, i + 1)] *= next;
        }
        delta = next;
    }
    (q, d, e)
}

/// Implicit QL on a real symmetric tridiagonal matrix. Returns ascending
/// eigenvalues and the row-major orthogonal eigenvector matrix.
fn tql2(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>), LinalgError> {
    let n = d.len();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITER {
                return Err(LinalgError::ConvergenceFailure { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zi1 = z[k * n + i + 1];
                    let zi = z[k * n + i];
                    z[k * n + i + 1] = s * zi + c * zi1;
                    z[k * n + i] = c * zi - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    let w: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut zs = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            zs[k * n + col] = z[k * n + src];
        }
    }
    Ok((w, zs))
}

/// Square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-clip_tol, clip_tol]` are treated as roundoff and set
/// to zero before the square root is taken (the square root would otherwise
/// amplify a 1e-16 eigenvalue into a 1e-8 entry); anything below
/// `-clip_tol` is rejected.
pub fn psd_sqrt(h: &ComplexMatrix, clip_tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = herm_eig(h)?;
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -clip_tol {
            return Err(LinalgError::IndefiniteInput { min_eigenvalue: min, clip_tol });
        }
    }
    Ok(eig.reconstruct_with(|w| if w <= clip_tol { 0.0 } else { w.sqrt() }))
}

/// [`psd_sqrt`] with the default clip tolerance `1e-10 * ‖H‖_F`.
pub fn psd_sqrt_default(h: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    psd_sqrt(h, 1e-10 * h.frobenius_norm())
}
