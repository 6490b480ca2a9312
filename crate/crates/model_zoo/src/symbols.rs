//! Per-order Dirichlet-to-Neumann symbols on a circle or sphere of radius R.
//!
//! Conventions: the normal derivative on each side of the interface is
//! taken with respect to the normal pointing out of that side. For the
//! interior this is ∂_r, for the exterior -∂_r, so
//!
//! Λ⁺_m = k·J_m'(kR)/J_m(kR),   Λ⁻_m = -k·H_m'(kR)/H_m(kR),
//!
//! with H the outgoing Hankel function. Below the spectrum both are real
//! and positive.

use num_complex::Complex64;
use specfun::logderiv::{cyl_h1_logderiv, cyl_j_logderiv, sph_h1_logderiv, sph_j_logderiv};
use weyl_core::WeylError;

use crate::error::special;

/// Relative guard band around exceptional λ.
pub const EXCLUSION_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Circle,
    Sphere,
}

/// √z on the branch Im √z ≥ 0, with √λ > 0 for λ > 0.
pub fn sqrt_upper(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// Wave number for z = λ + iε, ε ≥ 0, including the real axis.
pub fn wave_number(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        sqrt_upper(z)
    }
}

/// Λ⁻ for orders 0..=max_order.
pub fn exterior_dtn(geom: Geometry, max_order: usize, k: Complex64, radius: f64) -> Result<Vec<Complex64>, WeylError> {
    let w = k * radius;
    let ld = match geom {
        Geometry::Circle => cyl_h1_logderiv(max_order, w),
        Geometry::Sphere => sph_h1_logderiv(max_order, w),
    }
    .map_err(special)?;
    Ok(ld.into_iter().map(|f| -k * f).collect())
}

/// Λ⁺ for orders 0..=max_order.
pub fn interior_dtn(geom: Geometry, max_order: usize, k: Complex64, radius: f64) -> Result<Vec<Complex64>, WeylError> {
    let w = k * radius;
    let ld = match geom {
        Geometry::Circle => cyl_j_logderiv(max_order, w),
        Geometry::Sphere => sph_j_logderiv(max_order, w),
    }
    .map_err(special)?;
    Ok(ld.into_iter().map(|f| k * f).collect())
}

/// Real λ parts are taken exactly below the spectrum, where the symbols
/// are real up to roundoff in the complex path.
pub fn realify(v: &mut [Complex64]) {
    for x in v.iter_mut() {
        x.im = 0.0;
    }
}

/// Order m with kR within the guard band of a zero of J_m, if any.
/// Near a zero x₀ the log-derivative behaves like 1/(x - x₀), so
/// |λ - λ₀|/λ ≈ 2/(x·|J'/J|).
pub fn near_j_zero(geom: Geometry, max_order: usize, k: f64, radius: f64) -> Result<Option<usize>, WeylError> {
    let x = k * radius;
    let ld = match geom {
        Geometry::Circle => cyl_j_logderiv(max_order, Complex64::new(x, 0.0)),
        Geometry::Sphere => sph_j_logderiv(max_order, Complex64::new(x, 0.0)),
    }
    .map_err(special)?;
    Ok(ld.iter().position(|f| 2.0 / (x * f.norm()) <= EXCLUSION_GUARD))
}

/// Order m with kR within the guard band of a zero of J_m'. With
/// f = J'/J the Riccati equation f' = -f/x - (1 - m²/x²) - f² gives
/// |x - x₀| ≈ |f|/|1 - m²/x²| near such a zero.
pub fn near_jprime_zero(max_order: usize, k: f64, radius: f64) -> Result<Option<usize>, WeylError> {
    let x = k * radius;
    let ld = cyl_j_logderiv(max_order, Complex64::new(x, 0.0)).map_err(special)?;
    Ok(ld.iter().enumerate().position(|(m, f)| {
        let mf = m as f64;
        let slope = (1.0 - mf * mf / (x * x)).abs();
        slope > 0.0 && 2.0 * f.norm() / (x * slope) <= EXCLUSION_GUARD
    }))
}
