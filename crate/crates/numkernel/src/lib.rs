//! Dense complex linear algebra used throughout the workspace.
//!
//! Everything here is self-contained: a row-major [`ComplexMatrix`], a
//! Householder + implicit QL Hermitian eigensolver, a clipped PSD square
//! root, LU solves with a Hager-Higham 1-norm condition estimate, and a
//! one-sided Jacobi SVD for singular values.

mod eig;
mod error;
mod matrix;
mod solve;
mod svd;

pub use eig::{herm_eig, psd_sqrt, psd_sqrt_default, HermitianEig};
pub use error::LinalgError;
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use solve::{solve, solve_with_cap, LuFactors, Solution, DEFAULT_CONDITION_CAP, PIVOT_THRESHOLD};
pub use svd::singular_values;

/// Shorthand for a complex number from real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
