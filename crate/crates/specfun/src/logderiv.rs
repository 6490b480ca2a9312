//! Logarithmic derivatives f'/f of Bessel-family functions at complex
//! argument w in the closed upper half-plane.
//!
//! Outgoing functions (H_m = H_m^(1), h_l = h_l^(1)) use upward recurrence
//! of the ratio f_{k+1}/f_k, which is stable because they are dominant.
//! Regular functions (J_m, j_l) use the backward continued fraction.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::{SpecfunError, EULER_GAMMA, ORDER_CAP};

/// Below this |w| the starting ratio H_1/H_0 comes from the ascending series.
const SERIES_RADIUS: f64 = 2.0;
// Complex division squares magnitudes, so this must stay well above 1e-154.
const TINY: f64 = 1e-150;

fn check(order: usize, w: Complex64, upper: bool) -> Result<(), SpecfunError> {
    if order > ORDER_CAP {
        return Err(SpecfunError::OrderCapExceeded { order, cap: ORDER_CAP });
    }
    if !(w.re.is_finite() && w.im.is_finite()) || w.norm() == 0.0 {
        return Err(SpecfunError::DomainError(format!("argument {w} must be finite and non-zero")));
    }
    if upper && w.im < 0.0 {
        return Err(SpecfunError::DomainError(format!("argument {w} is below the real axis")));
    }
    if w.norm() > crate::X_MAX {
        return Err(SpecfunError::DomainError(format!("|{w}| exceeds {}", crate::X_MAX)));
    }
    Ok(())
}

/// H_m'(w)/H_m(w) for m = 0..=m_max.
pub fn cyl_h1_logderiv(m_max: usize, w: Complex64) -> Result<Vec<Complex64>, SpecfunError> {
    check(m_max, w, true)?;
    let mut rho = h1_ratio0(w);
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(-rho);
    for m in 1..=m_max {
        rho = 2.0 * m as f64 / w - 1.0 / rho;
        out.push(m as f64 / w - rho);
    }
    Ok(out)
}

/// J_m'(w)/J_m(w) for m = 0..=m_max. Infinite (large) at zeros of J_m.
pub fn cyl_j_logderiv(m_max: usize, w: Complex64) -> Result<Vec<Complex64>, SpecfunError> {
    check(m_max, w, false)?;
    let sigma = backward_ratios(m_max, w, |k| 2.0 * (k + 1) as f64);
    Ok((0..=m_max).map(|m| m as f64 / w - sigma[m]).collect())
}

/// h_l'(w)/h_l(w) for l = 0..=l_max.
pub fn sph_h1_logderiv(l_max: usize, w: Complex64) -> Result<Vec<Complex64>, SpecfunError> {
    check(l_max, w, true)?;
    // h_1/h_0 = 1/w - i
    let mut rho = 1.0 / w - Complex64::i();
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(-rho);
    for l in 1..=l_max {
        rho = (2 * l + 1) as f64 / w - 1.0 / rho;
        out.push(l as f64 / w - rho);
    }
    Ok(out)
}

/// j_l'(w)/j_l(w) for l = 0..=l_max.
pub fn sph_j_logderiv(l_max: usize, w: Complex64) -> Result<Vec<Complex64>, SpecfunError> {
    check(l_max, w, false)?;
    let sigma = backward_ratios(l_max, w, |k| (2 * k + 3) as f64);
    Ok((0..=l_max).map(|l| l as f64 / w - sigma[l]).collect())
}

/// sigma[k] = f_{k+1}/f_k for the recessive solution of
/// f_{k+1} + f_{k-1} = (c(k-1)/w) f_k, with c(k) the coefficient that
/// links f_{k+1} to f_k and f_{k+2}.
fn backward_ratios(k_max: usize, w: Complex64, c: impl Fn(usize) -> f64) -> Vec<Complex64> {
    let base = (k_max as f64).max(w.norm().ceil()).max(1.0);
    let big_n = base as usize + 30 + (40.0 * base).sqrt() as usize;
    let mut sigma = vec![Complex64::new(0.0, 0.0); big_n + 2];
    for k in (0..=big_n).rev() {
        let mut den = c(k) / w - sigma[k + 1];
        if den.norm() < TINY {
            den = Complex64::new(TINY, 0.0);
        }
        sigma[k] = 1.0 / den;
    }
    sigma.truncate(k_max + 1);
    sigma
}

/// H_1(w)/H_0(w).
fn h1_ratio0(w: Complex64) -> Complex64 {
    if w.norm() < SERIES_RADIUS {
        let (j0, j1, y0, y1) = series_jy01(w);
        let i = Complex64::i();
        (j1 + i * y1) / (j0 + i * y0)
    } else {
        -steed_h0_logderiv(w)
    }
}

/// H_0'/H_0 from Steed's continued fraction, evaluated with modified Lentz.
fn steed_h0_logderiv(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    let nu2 = 0.0;
    let mut f = Complex64::new(TINY, 0.0);
    let mut cc = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..100_000 {
        let half = (2 * k - 1) as f64 / 2.0;
        let a = Complex64::new(half * half - nu2, 0.0);
        let b = 2.0 * (w + i * k as f64);
        d = b + a * d;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        cc = b + a / cc;
        if cc.norm() < TINY {
            cc = Complex64::new(TINY, 0.0);
        }
        let delta = cc * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    -0.5 / w + i + (i / w) * f
}

/// Ascending series for J_0, J_1, Y_0, Y_1 at complex w.
pub(crate) fn series_jy01(w: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
    let q = -w * w / 4.0;
    let log = (w / 2.0).ln();
    let zero = Complex64::new(0.0, 0.0);
    let (mut j0, mut j1, mut s0, mut s1) = (zero, zero, zero, zero);
    let mut t0 = Complex64::new(1.0, 0.0); // q^k/(k!)^2
    let mut t1 = Complex64::new(1.0, 0.0); // q^k/(k!(k+1)!)
    let mut harm = 0.0; // H_k
    for k in 0..200usize {
        if k > 0 {
            let kf = k as f64;
            t0 *= q / (kf * kf);
            t1 *= q / (kf * (kf + 1.0));
            harm += 1.0 / kf;
        }
        j0 += t0;
        j1 += t1;
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        s0 -= t0 * harm;
        s1 += t1 * (2.0 * harm + 1.0 / (k as f64 + 1.0) - 2.0 * EULER_GAMMA);
        if k > 2 && t0.norm() * (1.0 + harm) < 1e-18 * j0.norm().max(1e-300) && t1.norm() * (2.0 + 2.0 * harm) < 1e-18 * j1.norm().max(1e-300) {
            break;
        }
    }
    let half_w = w / 2.0;
    let j1 = half_w * j1;
    let y0 = FRAC_2_PI * (log + EULER_GAMMA) * j0 + FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI / w + FRAC_2_PI * log * j1 - half_w * s1 / PI;
    (j0, j1, y0, y1)
}
