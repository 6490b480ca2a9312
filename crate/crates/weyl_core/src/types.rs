use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use numkernel::ComplexMatrix;
use serde::{Deserialize, Serialize};

use crate::WeylError;

/// z = λ + iε in the closed upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub lambda: f64,
    pub epsilon: f64,
}

impl SpectralPoint {
    pub fn new(lambda: f64, epsilon: f64) -> Result<Self, WeylError> {
        if !lambda.is_finite() || !epsilon.is_finite() || epsilon < 0.0 {
            return Err(WeylError::InvalidPoint(format!("λ = {lambda}, ε = {epsilon}")));
        }
        Ok(Self { lambda, epsilon })
    }

    /// λ + i0.
    pub fn boundary(lambda: f64) -> Result<Self, WeylError> {
        Self::new(lambda, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Result<Self, WeylError> {
        Self::new(z.re, z.im)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.lambda, self.epsilon)
    }

    pub fn is_boundary(&self) -> bool {
        self.epsilon == 0.0
    }
}

/// Label of one retained boundary mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeLabel {
    /// One-dimensional boundary space.
    Scalar,
    /// Fourier mode e^{imθ} on a circle.
    Fourier(i64),
    /// Spherical harmonic Y_l^m.
    Spherical { l: usize, m: i64 },
}

impl ModeLabel {
    /// Angular order |m| or l, 0 for scalar.
    pub fn order(&self) -> usize {
        match *self {
            ModeLabel::Scalar => 0,
            ModeLabel::Fourier(m) => m.unsigned_abs() as usize,
            ModeLabel::Spherical { l, .. } => l,
        }
    }

    /// Eigenvalue of the boundary Laplace-Beltrami operator on the unit
    /// circle or sphere.
    pub fn laplace_eigenvalue(&self) -> f64 {
        match *self {
            ModeLabel::Scalar => 0.0,
            ModeLabel::Fourier(m) => (m * m) as f64,
            ModeLabel::Spherical { l, .. } => (l * (l + 1)) as f64,
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Scalar => write!(f, "s"),
            ModeLabel::Fourier(m) => write!(f, "m{m}"),
            ModeLabel::Spherical { l, m } => write!(f, "l{l}m{m}"),
        }
    }
}

/// The finite set of boundary modes a computation keeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelTruncation {
    labels: Vec<ModeLabel>,
}

impl ChannelTruncation {
    pub fn new(labels: Vec<ModeLabel>) -> Result<Self, WeylError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(*l) {
                return Err(WeylError::InvalidTruncation(format!("duplicate label {l}")));
            }
        }
        Ok(Self { labels })
    }

    pub fn scalar() -> Self {
        Self { labels: vec![ModeLabel::Scalar] }
    }

    /// Fourier modes m = -k..=k.
    pub fn fourier(k: usize) -> Self {
        let k = k as i64;
        Self { labels: (-k..=k).map(ModeLabel::Fourier).collect() }
    }

    /// Spherical harmonics with l ≤ l_max, ordered by l then m.
    pub fn spherical(l_max: usize) -> Self {
        let mut labels = Vec::with_capacity((l_max + 1) * (l_max + 1));
        for l in 0..=l_max {
            let li = l as i64;
            for m in -li..=li {
                labels.push(ModeLabel::Spherical { l, m });
            }
        }
        Self { labels }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn max_order(&self) -> usize {
        self.labels.iter().map(ModeLabel::order).max().unwrap_or(0)
    }
}

/// One sample of M(z) on a truncation.
#[derive(Debug, Clone)]
pub struct WeylSample {
    pub z: Complex64,
    /// True when `z` stands for λ + i0.
    pub boundary: bool,
    pub m: ComplexMatrix,
    pub truncation: ChannelTruncation,
}

/// Rigging ĵ, a positive multiplier per boundary mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RiggingWeights {
    Identity,
    /// (1 + μ/R²)^{1/4} with μ the Laplace-Beltrami eigenvalue of the
    /// mode on the unit circle or sphere.
    Laplace { radius: f64 },
    /// Explicit weights in truncation order.
    PerMode(Vec<f64>),
}

impl RiggingWeights {
    pub fn weights(&self, trunc: &ChannelTruncation) -> Result<Vec<f64>, WeylError> {
        let w: Vec<f64> = match self {
            RiggingWeights::Identity => vec![1.0; trunc.n()],
            RiggingWeights::Laplace { radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(WeylError::ModelDomainError(format!("rigging radius {radius} must be positive")));
                }
                trunc.labels().iter().map(|l| (1.0 + l.laplace_eigenvalue() / (radius * radius)).powf(0.25)).collect()
            }
            RiggingWeights::PerMode(w) => {
                if w.len() != trunc.n() {
                    return Err(WeylError::InvalidTruncation(format!("{} rigging weights for {} modes", w.len(), trunc.n())));
                }
                w.clone()
            }
        };
        if let Some(bad) = w.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(WeylError::ModelDomainError(format!("rigging weight {bad} is not positive")));
        }
        Ok(w)
    }
}
