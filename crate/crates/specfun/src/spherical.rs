use num_complex::Complex64;

use crate::{check_real, SpecfunError};

/// Spherical Bessel functions j_l, y_l and derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalEval {
    pub order: usize,
    pub arg: f64,
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

impl SphericalEval {
    /// h_l = j_l + i y_l.
    pub fn h(&self) -> Complex64 {
        Complex64::new(self.j, self.y)
    }

    pub fn dh(&self) -> Complex64 {
        Complex64::new(self.dj, self.dy)
    }

    /// j y' - j' y against 1/x², relative.
    pub fn wronskian_residual(&self) -> f64 {
        let w = 1.0 / (self.arg * self.arg);
        (self.j * self.dy - self.dj * self.y - w).abs() / w
    }
}

pub fn spherical_jyh(l: usize, x: f64) -> Result<SphericalEval, SpecfunError> {
    check_real(l, x)?;
    Ok(spherical_jyh_seq(l, x)?.pop().expect("sequence is non-empty"))
}

/// j_k, y_k and derivatives for k = 0..=l_max.
pub fn spherical_jyh_seq(l_max: usize, x: f64) -> Result<Vec<SphericalEval>, SpecfunError> {
    check_real(l_max, x)?;
    let n = l_max + 2;
    let y = y_upward(n, x);
    let j = j_values(n - 1, x, &y);
    let out: Vec<SphericalEval> = (0..=l_max)
        .map(|l| {
            let lf = l as f64;
            let dj = lf / x * j[l] - j[l + 1];
            let dy = lf / x * y[l] - y[l + 1];
            SphericalEval { order: l, arg: x, j: j[l], y: y[l], dj, dy }
        })
        .collect();
    for e in &out {
        if e.y.is_finite() && e.dy.is_finite() && e.j != 0.0 {
            debug_assert!(e.wronskian_residual() < 1e-8, "spherical Wronskian violated at order {} x {}", e.order, x);
        }
    }
    Ok(out)
}

fn y_upward(n: usize, x: f64) -> Vec<f64> {
    let (s, c) = x.sin_cos();
    let mut y = vec![0.0; n + 1];
    y[0] = -c / x;
    if n >= 1 {
        y[1] = -c / (x * x) - s / x;
    }
    for l in 1..n {
        y[l + 1] = (2 * l + 1) as f64 / x * y[l] - y[l - 1];
    }
    y
}

/// j_0..j_n. Uses the ascending series where it has no cancellation and
/// otherwise the continued-fraction ratio j_{l+1}/j_l normalised by the
/// Wronskian j_{l+1} y_l - j_l y_{l+1} = 1/x².
fn j_values(n: usize, x: f64, y: &[f64]) -> Vec<f64> {
    let mut j = vec![0.0; n + 1];
    let big_n = {
        let base = (n as f64).max(x.ceil()).max(1.0);
        base as usize + 20 + (40.0 * base).sqrt() as usize
    };
    let mut rho = vec![0.0; big_n + 2];
    for l in (0..=big_n).rev() {
        let mut den = (2 * l + 3) as f64 / x - rho[l + 1];
        if den == 0.0 {
            den = 1e-300;
        }
        rho[l] = 1.0 / den;
    }
    for l in 0..=n {
        if x * x < (2 * l + 3) as f64 {
            j[l] = ascending_series(l, x);
        } else {
            j[l] = 1.0 / (x * x * (rho[l] * y[l] - y[l + 1]));
        }
    }
    j
}

fn ascending_series(l: usize, x: f64) -> f64 {
    let mut pre = 1.0;
    for i in 1..=l {
        pre *= x / (2 * i + 1) as f64;
    }
    let u = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= u / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    pre * sum
}
