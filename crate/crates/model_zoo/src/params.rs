use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use numkernel::ComplexMatrix;
use serde::{Deserialize, Serialize};
use weyl_core::{ChannelTruncation, ModeLabel};

use crate::ZooError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    DeltaLine,
    JacobiHalfline,
    DiskDirichletRobin,
    DiskNeumannRobin,
    CircleDirichletFree,
    CircleNeumannFree,
    CircleDeltaShell,
    SphereDeltaShell,
}

impl ModelKind {
    pub const ALL: [ModelKind; 8] = [
        ModelKind::DeltaLine,
        ModelKind::JacobiHalfline,
        ModelKind::DiskDirichletRobin,
        ModelKind::DiskNeumannRobin,
        ModelKind::CircleDirichletFree,
        ModelKind::CircleNeumannFree,
        ModelKind::CircleDeltaShell,
        ModelKind::SphereDeltaShell,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ModelKind::DeltaLine => "delta-line",
            ModelKind::JacobiHalfline => "jacobi-halfline",
            ModelKind::DiskDirichletRobin => "disk-dirichlet-robin",
            ModelKind::DiskNeumannRobin => "disk-neumann-robin",
            ModelKind::CircleDirichletFree => "circle-dirichlet-free",
            ModelKind::CircleNeumannFree => "circle-neumann-free",
            ModelKind::CircleDeltaShell => "circle-delta-shell",
            ModelKind::SphereDeltaShell => "sphere-delta-shell",
        }
    }

    /// Space dimension of the underlying Schrödinger operator; 0 for the
    /// discrete chain.
    pub fn dimension(&self) -> usize {
        match self {
            ModelKind::DeltaLine => 1,
            ModelKind::JacobiHalfline => 0,
            ModelKind::SphereDeltaShell => 3,
            _ => 2,
        }
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, ModelKind::DeltaLine | ModelKind::JacobiHalfline)
    }

    /// Models whose boundary space is one-dimensional.
    pub fn is_scalar(&self) -> bool {
        !self.is_radial()
    }

    /// Models written as M = N - α⁻¹.
    pub fn is_robin_type(&self) -> bool {
        matches!(
            self,
            ModelKind::DeltaLine | ModelKind::JacobiHalfline | ModelKind::DiskNeumannRobin | ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell
        )
    }

    pub fn uses_alpha(&self) -> bool {
        !matches!(self, ModelKind::CircleDirichletFree | ModelKind::CircleNeumannFree)
    }

    /// Models with an interior region (and hence V0 and interior symbols).
    pub fn has_interior(&self) -> bool {
        matches!(
            self,
            ModelKind::CircleDirichletFree | ModelKind::CircleNeumannFree | ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell
        )
    }

    /// Truncation for a mode budget: Fourier |m| ≤ k on circles, l ≤ k on
    /// the sphere, the single channel otherwise.
    pub fn truncation(&self, k: usize) -> ChannelTruncation {
        match self {
            ModelKind::DeltaLine | ModelKind::JacobiHalfline => ChannelTruncation::scalar(),
            ModelKind::SphereDeltaShell => ChannelTruncation::spherical(k),
            _ => ChannelTruncation::fourier(k),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ModelKind {
    type Err = ZooError;
    fn from_str(s: &str) -> Result<Self, ZooError> {
        let norm = s.replace('_', "-");
        ModelKind::ALL.iter().copied().find(|k| k.id() == norm).ok_or_else(|| ZooError::InvalidParameters(format!("unknown model '{s}'")))
    }
}

/// Boundary coupling α.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coupling {
    Constant(f64),
    /// α per angular order |m| (or l); the last entry repeats.
    PerOrder(Vec<f64>),
    /// α(θ) = Σ a_k e^{ikθ} on a circle, given as (k, a_k). Must satisfy
    /// a_{-k} = conj(a_k) so that α is real.
    Fourier(Vec<(i64, Complex64)>),
}

impl Coupling {
    pub fn scalar(&self) -> Option<f64> {
        match self {
            Coupling::Constant(a) => Some(*a),
            _ => None,
        }
    }

    /// α on one mode, for mode-diagonal couplings.
    pub fn for_order(&self, order: usize) -> Option<f64> {
        match self {
            Coupling::Constant(a) => Some(*a),
            Coupling::PerOrder(v) => v.get(order).or(v.last()).copied(),
            Coupling::Fourier(_) => None,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Coupling::Fourier(_))
    }

    /// Multiplication by α in mode space.
    pub fn matrix(&self, trunc: &ChannelTruncation) -> ComplexMatrix {
        let labels = trunc.labels();
        match self {
            Coupling::Fourier(coeffs) => ComplexMatrix::from_fn(labels.len(), labels.len(), |i, j| match (labels[i], labels[j]) {
                (ModeLabel::Fourier(a), ModeLabel::Fourier(b)) => {
                    coeffs.iter().filter(|(k, _)| *k == a - b).map(|(_, c)| *c).sum()
                }
                _ => Complex64::new(0.0, 0.0),
            }),
            _ => ComplexMatrix::from_real_diag(&labels.iter().map(|l| self.for_order(l.order()).unwrap_or(0.0)).collect::<Vec<_>>()),
        }
    }

    /// True when some mode has α = 0, so α⁻¹ does not exist.
    pub fn has_zero(&self) -> bool {
        match self {
            Coupling::Constant(a) => *a == 0.0,
            Coupling::PerOrder(v) => v.iter().any(|a| *a == 0.0),
            // a Fourier coupling is treated as invertible unless it is zero;
            // the dense solve catches the rest
            Coupling::Fourier(c) => c.iter().all(|(_, a)| a.norm() == 0.0),
        }
    }

    fn validate(&self) -> Result<(), ZooError> {
        match self {
            Coupling::Constant(a) if !a.is_finite() => Err(ZooError::InvalidParameters(format!("α = {a} is not finite"))),
            Coupling::PerOrder(v) if v.is_empty() || v.iter().any(|a| !a.is_finite()) => {
                Err(ZooError::InvalidParameters("per-order α must be non-empty and finite".into()))
            }
            Coupling::Fourier(c) => {
                for (k, a) in c {
                    if !(a.re.is_finite() && a.im.is_finite()) {
                        return Err(ZooError::InvalidParameters(format!("Fourier coefficient a_{k} is not finite")));
                    }
                    let partner: Complex64 = c.iter().filter(|(j, _)| *j == -k).map(|(_, b)| *b).sum();
                    let own: Complex64 = c.iter().filter(|(j, _)| j == k).map(|(_, b)| *b).sum();
                    if (partner - own.conj()).norm() > 1e-14 * (1.0 + own.norm()) {
                        return Err(ZooError::InvalidParameters(format!("a_{{-{k}}} must equal conj(a_{k}) for a real α")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Choice of the rigging ĵ for models that use one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiggingChoice {
    /// (−Δ_∂Ω + I)^{1/4}.
    Laplace,
    Identity,
    /// √Λ(λ₀) for some λ₀ below the spectrum (circle models).
    Dtn { lambda0: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kind: ModelKind,
    pub alpha: Coupling,
    pub radius: f64,
    /// Constant potential inside r < R (models with an interior region).
    pub v0: f64,
    pub rigging: RiggingChoice,
}

impl ModelParams {
    pub fn new(kind: ModelKind, alpha: f64) -> Self {
        Self { kind, alpha: Coupling::Constant(alpha), radius: 1.0, v0: 0.0, rigging: RiggingChoice::Laplace }
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_v0(mut self, v0: f64) -> Self {
        self.v0 = v0;
        self
    }

    pub fn with_coupling(mut self, alpha: Coupling) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_rigging(mut self, rigging: RiggingChoice) -> Self {
        self.rigging = rigging;
        self
    }

    pub fn validate(&self) -> Result<(), ZooError> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(ZooError::InvalidParameters(format!("radius {} must be positive", self.radius)));
        }
        if !self.v0.is_finite() {
            return Err(ZooError::InvalidParameters(format!("V0 = {} is not finite", self.v0)));
        }
        if self.v0 != 0.0 && !self.kind.has_interior() {
            return Err(ZooError::InvalidParameters(format!("{} has no interior region for a potential", self.kind)));
        }
        self.alpha.validate()?;
        if self.kind.is_scalar() && self.alpha.scalar().is_none() {
            return Err(ZooError::InvalidParameters(format!("{} needs a constant α", self.kind)));
        }
        if matches!(self.alpha, Coupling::Fourier(_)) && self.kind == ModelKind::SphereDeltaShell {
            return Err(ZooError::InvalidParameters("Fourier couplings are defined on circles only".into()));
        }
        if let RiggingChoice::Dtn { lambda0 } = self.rigging {
            if !matches!(self.kind, ModelKind::CircleDirichletFree | ModelKind::CircleNeumannFree | ModelKind::DiskDirichletRobin) {
                return Err(ZooError::InvalidParameters("DtN rigging applies to the circle and Dirichlet-Robin models".into()));
            }
            if !(lambda0 < self.v0.min(0.0)) {
                return Err(ZooError::InvalidParameters(format!("λ₀ = {lambda0} must lie below the spectrum")));
            }
        }
        Ok(())
    }
}
