use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::{check_real, SpecfunError, EULER_GAMMA};

/// Above this argument J_0, J_1, Y_0, Y_1 come from the Hankel expansion.
const ASYMPTOTIC_X: f64 = 25.0;

/// Values and first derivatives of J and Y at one (order, argument) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: f64,
    pub arg: f64,
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

impl BesselEval {
    /// J Y' - Y J' minus its exact value 2/(πx), relative to 2/(πx).
    pub fn wronskian_residual(&self) -> f64 {
        let w = 2.0 / (PI * self.arg);
        (self.j * self.dy - self.y * self.dj - w).abs() / w
    }

    pub fn hankel(&self) -> HankelEval {
        HankelEval { order: self.order, arg: self.arg, h: Complex64::new(self.j, self.y), dh: Complex64::new(self.dj, self.dy) }
    }
}

/// H_m(x) = J_m(x) + iY_m(x) and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelEval {
    pub order: f64,
    pub arg: f64,
    pub h: Complex64,
    pub dh: Complex64,
}

/// J_m(x), Y_m(x) and derivatives.
pub fn bessel_jy(m: usize, x: f64) -> Result<BesselEval, SpecfunError> {
    check_real(m, x)?;
    Ok(bessel_jy_seq(m, x)?.pop().expect("sequence is non-empty"))
}

/// J_k(x), Y_k(x) and derivatives for k = 0..=m_max.
pub fn bessel_jy_seq(m_max: usize, x: f64) -> Result<Vec<BesselEval>, SpecfunError> {
    check_real(m_max, x)?;
    let (j, y) = jy_arrays(m_max + 1, x);
    let out: Vec<BesselEval> = (0..=m_max)
        .map(|k| {
            let kf = k as f64;
            let dj = kf / x * j[k] - j[k + 1];
            let dy = if k == 0 { -y[1] } else { y[k - 1] - kf / x * y[k] };
            BesselEval { order: kf, arg: x, j: j[k], y: y[k], dj, dy }
        })
        .collect();
    for e in &out {
        if e.y.is_finite() && e.dy.is_finite() && e.j != 0.0 {
            debug_assert!(e.wronskian_residual() < 1e-8, "Wronskian violated at order {} x {}: {:e}", e.order, x, e.wronskian_residual());
        }
    }
    Ok(out)
}

/// H_m(x) and H_m'(x), Hankel function of the first kind.
pub fn hankel1(m: usize, x: f64) -> Result<HankelEval, SpecfunError> {
    Ok(bessel_jy(m, x)?.hankel())
}

pub fn hankel1_seq(m_max: usize, x: f64) -> Result<Vec<HankelEval>, SpecfunError> {
    Ok(bessel_jy_seq(m_max, x)?.iter().map(BesselEval::hankel).collect())
}

/// J_k and Y_k for k = 0..=n.
fn jy_arrays(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut j = vec![0.0; n + 1];
    let mut y = vec![0.0; n + 1];
    if x <= ASYMPTOTIC_X {
        let big_n = miller_start(n, x);
        let jj = miller_j(big_n, x);
        j.copy_from_slice(&jj[..=n]);
        let (y0, y1) = neumann_y01(&jj, x);
        y[0] = y0;
        if n >= 1 {
            y[1] = y1;
        }
    } else {
        let (j0, j1, y0, y1) = hankel_asymptotic_01(x);
        j[0] = j0;
        y[0] = y0;
        if n >= 1 {
            j[1] = j1;
            y[1] = y1;
        }
        // Upward recurrence is safe while k < x; beyond that J is the
        // recessive solution and is continued with downward ratios.
        let k0 = (x.floor() as usize).min(n);
        for k in 1..k0 {
            j[k + 1] = 2.0 * k as f64 / x * j[k] - j[k - 1];
        }
        if n > k0 {
            let r = downward_ratios(miller_start(n, x), x);
            for k in k0 + 1..=n {
                j[k] = j[k - 1] * r[k];
            }
        }
    }
    for k in 1..n {
        y[k + 1] = 2.0 * k as f64 / x * y[k] - y[k - 1];
    }
    (j, y)
}

fn miller_start(n: usize, x: f64) -> usize {
    let base = (n as f64).max(x.ceil()).max(1.0);
    let s = base as usize + 20 + (40.0 * base).sqrt() as usize;
    s + (s % 2)
}

/// r[k] = J_k / J_{k-1} for k = 1..=big_n from the backward recurrence.
fn downward_ratios(big_n: usize, x: f64) -> Vec<f64> {
    let mut r = vec![0.0; big_n + 2];
    for k in (1..=big_n).rev() {
        let mut den = 2.0 * k as f64 / x - r[k + 1];
        if den == 0.0 {
            den = 1e-300;
        }
        r[k] = 1.0 / den;
    }
    r
}

/// J_0..J_bigN by Miller's method normalised with J_0 + 2 Σ J_2k = 1.
fn miller_j(big_n: usize, x: f64) -> Vec<f64> {
    let r = downward_ratios(big_n, x);
    let mut jt = vec![0.0; big_n + 1];
    jt[0] = 1.0;
    for k in 1..=big_n {
        jt[k] = jt[k - 1] * r[k];
    }
    let mut s = jt[0];
    let mut k = 2;
    while k <= big_n {
        s += 2.0 * jt[k];
        k += 2;
    }
    jt.iter().map(|v| v / s).collect()
}

/// Y_0 and Y_1 from the Neumann series in even/odd J_k.
fn neumann_y01(j: &[f64], x: f64) -> (f64, f64) {
    let l = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = FRAC_2_PI * l * j[0] - 2.0 * FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * l * j[1] + FRAC_2_PI * s1;
    (y0, y1)
}

/// Hankel asymptotic expansion for orders 0 and 1, truncated at the
/// smallest term.
fn hankel_asymptotic_01(x: f64) -> (f64, f64, f64, f64) {
    let pq = |nu: f64| {
        let mu = 4.0 * nu * nu;
        let (mut p, mut q) = (1.0, 0.0);
        let mut t = 1.0f64;
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let odd = (2 * k - 1) as f64;
            t *= (mu - odd * odd) / (k as f64 * 8.0 * x);
            if t.abs() >= prev || t.abs() < 1e-18 {
                break;
            }
            prev = t.abs();
            match k % 4 {
                1 => q += t,
                2 => p -= t,
                3 => q -= t,
                _ => p += t,
            }
        }
        (p, q)
    };
    let amp = (FRAC_2_PI / x).sqrt();
    let (s, c) = x.sin_cos();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // chi = x - pi/4 for order 0, x - 3pi/4 for order 1
    let (c0, s0) = ((c + s) * h, (s - c) * h);
    let (c1, s1) = ((s - c) * h, -(s + c) * h);
    let (p0, q0) = pq(0.0);
    let (p1, q1) = pq(1.0);
    let j0 = amp * (p0 * c0 - q0 * s0);
    let y0 = amp * (p0 * s0 + q0 * c0);
    let j1 = amp * (p1 * c1 - q1 * s1);
    let y1 = amp * (p1 * s1 + q1 * c1);
    (j0, j1, y0, y1)
}
