use num_complex::Complex64;
use numkernel::{ComplexMatrix, LuFactors};
use serde::{Deserialize, Serialize};
use specfun::SpecfunError;
use weyl_core::{ChannelTruncation, ModeLabel, RiggingWeights, RobinParts, SpectralPoint, WeylError, WeylModel};

use crate::jacobi::{m_at, BAND_EDGE};
use crate::symbols::{exterior_dtn, interior_dtn, near_j_zero, near_jprime_zero, realify, wave_number, Geometry, EXCLUSION_GUARD};
use crate::{ModelKind, ModelParams, RiggingChoice, ZooError};

/// Which per-mode symbol a [`ModeSymbolTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolKind {
    /// The model's DtN symbol Λ: Λ⁻ for the disk models, Λ⁺ + Λ⁻ for
    /// models with an interior, 1/N for the scalar models.
    Dtn,
    /// 1/Λ.
    Ntd,
    /// Interior NtD D₊ = 1/Λ⁺.
    Interior,
    /// Exterior NtD D₋ = 1/Λ⁻.
    Exterior,
    /// E = (D₊⁻¹ + D₋⁻¹)⁻¹.
    Coupled,
    /// Diagonal of M.
    WeylM,
}

/// One scalar symbol per retained mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSymbolTable {
    pub model: ModelKind,
    pub point: SpectralPoint,
    pub kind: SymbolKind,
    pub entries: Vec<(ModeLabel, Complex64)>,
}

impl ModeSymbolTable {
    pub fn get(&self, label: ModeLabel) -> Option<Complex64> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, v)| *v)
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }
}

/// Per-order DtN symbols at one spectral value.
struct OrderSymbols {
    ext: Vec<Complex64>,
    int: Option<Vec<Complex64>>,
}

/// A validated model instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelHandle {
    params: ModelParams,
}

impl ModelHandle {
    pub fn new(params: ModelParams) -> Result<Self, ZooError> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn kind(&self) -> ModelKind {
        self.params.kind
    }

    fn geometry(&self) -> Option<Geometry> {
        match self.params.kind {
            ModelKind::DeltaLine | ModelKind::JacobiHalfline => None,
            ModelKind::SphereDeltaShell => Some(Geometry::Sphere),
            _ => Some(Geometry::Circle),
        }
    }

    fn order_symbols(&self, z: Complex64, max_order: usize) -> Result<OrderSymbols, WeylError> {
        let geom = self.geometry().expect("radial model");
        let r = self.params.radius;
        let boundary = z.im == 0.0;
        let mut ext = exterior_dtn(geom, max_order, wave_number(z), r)?;
        if boundary && z.re < 0.0 {
            realify(&mut ext);
        }
        let int = if self.params.kind.has_interior() {
            let mut v = interior_dtn(geom, max_order, wave_number(z - self.params.v0), r)?;
            if boundary {
                realify(&mut v);
            }
            Some(v)
        } else {
            None
        };
        Ok(OrderSymbols { ext, int })
    }

    /// Scalar symbol of `kind` per truncation label. `z` with Im z = 0
    /// stands for λ + i0.
    fn symbol_values(&self, z: Complex64, trunc: &ChannelTruncation, kind: SymbolKind) -> Result<Vec<Complex64>, WeylError> {
        let one = Complex64::new(1.0, 0.0);
        let per_order: Vec<Complex64> = match self.params.kind {
            ModelKind::DeltaLine | ModelKind::JacobiHalfline => {
                let n = self.scalar_n(z)?;
                let v = match kind {
                    SymbolKind::Ntd => n,
                    SymbolKind::Dtn => one / n,
                    SymbolKind::WeylM => return self.weyl_diag(z, trunc).map(|d| d.expect("scalar model is diagonal")),
                    other => return Err(WeylError::ModelDomainError(format!("{} has no {other:?} symbol", self.params.kind))),
                };
                vec![v]
            }
            _ => {
                if kind == SymbolKind::WeylM {
                    return self
                        .weyl_diag(z, trunc)?
                        .ok_or_else(|| WeylError::ModelDomainError("M is not mode-diagonal for this coupling".into()));
                }
                let s = self.order_symbols(z, trunc.max_order())?;
                let inv = |v: &[Complex64]| v.iter().map(|x| one / x).collect::<Vec<_>>();
                let sum = |s: &OrderSymbols| -> Vec<Complex64> {
                    match &s.int {
                        Some(i) => i.iter().zip(&s.ext).map(|(a, b)| a + b).collect(),
                        None => s.ext.clone(),
                    }
                };
                let need_int = |s: &OrderSymbols| {
                    s.int.clone().ok_or_else(|| WeylError::ModelDomainError(format!("{} has no interior region", self.params.kind)))
                };
                match kind {
                    SymbolKind::Dtn => sum(&s),
                    SymbolKind::Ntd => inv(&sum(&s)),
                    SymbolKind::Exterior => inv(&s.ext),
                    SymbolKind::Interior => inv(&need_int(&s)?),
                    SymbolKind::Coupled => {
                        need_int(&s)?;
                        inv(&sum(&s))
                    }
                    SymbolKind::WeylM => unreachable!(),
                }
            }
        };
        Ok(trunc.labels().iter().map(|l| per_order[l.order().min(per_order.len() - 1)]).collect())
    }

    /// N for the one-channel models.
    fn scalar_n(&self, z: Complex64) -> Result<Complex64, WeylError> {
        match self.params.kind {
            ModelKind::DeltaLine => {
                let k = wave_number(z);
                if k.norm() == 0.0 {
                    return Err(WeylError::ModelDomainError("z = 0 is the threshold of the free line".into()));
                }
                let n = Complex64::new(0.0, 1.0) / (2.0 * k);
                Ok(if z.im == 0.0 && z.re < 0.0 { Complex64::new(n.re, 0.0) } else { n })
            }
            ModelKind::JacobiHalfline => Ok(m_at(z)),
            _ => unreachable!(),
        }
    }

    /// The mode-diagonal N of the Robin decomposition, per label.
    fn robin_n(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<Vec<Complex64>, WeylError> {
        let kind = match self.params.kind {
            ModelKind::DiskNeumannRobin => SymbolKind::Exterior,
            ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell => SymbolKind::Coupled,
            _ => SymbolKind::Ntd,
        };
        self.symbol_values(z, trunc, kind)
    }

    /// α in the Robin decomposition M = N - α⁻¹. The chain is written as
    /// M = m + 1/α, i.e. its Robin coupling is -α.
    fn robin_alpha(&self, trunc: &ChannelTruncation) -> ComplexMatrix {
        let a = self.params.alpha.matrix(trunc);
        if self.params.kind == ModelKind::JacobiHalfline {
            a.scale_real(-1.0)
        } else {
            a
        }
    }

    /// Diagonal of M when M is mode-diagonal.
    fn weyl_diag(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<Option<Vec<Complex64>>, WeylError> {
        let kind = self.params.kind;
        let coupling = &self.params.alpha;
        if kind.uses_alpha() && !coupling.is_diagonal() {
            return Ok(None);
        }
        let labels = trunc.labels();
        if kind.is_robin_type() {
            let n = self.robin_n(z, trunc)?;
            let alpha = self.robin_alpha(trunc);
            let mut out = Vec::with_capacity(n.len());
            for (i, v) in n.iter().enumerate() {
                let a = alpha[(i, i)].re;
                if a == 0.0 {
                    return Err(WeylError::ModelDomainError(format!(
                        "α vanishes on mode {}; M = N - α⁻¹ is undefined there (the Robin route remains available)",
                        labels[i]
                    )));
                }
                out.push(v - 1.0 / a);
            }
            return Ok(Some(out));
        }
        let w = self.rigging(trunc)?;
        let lam = self.symbol_values(z, trunc, SymbolKind::Dtn)?;
        let out = match kind {
            ModelKind::DiskDirichletRobin => {
                let a = coupling.matrix(trunc);
                (0..labels.len()).map(|i| (a[(i, i)] - lam[i]) / (w[i] * w[i])).collect()
            }
            ModelKind::CircleDirichletFree => (0..labels.len()).map(|i| -lam[i] / (w[i] * w[i])).collect(),
            ModelKind::CircleNeumannFree => {
                let s = self.order_symbols(z, trunc.max_order())?;
                let int = s.int.expect("interior model");
                labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        let o = l.order();
                        (1.0 / int[o] + 1.0 / s.ext[o]) * (w[i] * w[i])
                    })
                    .collect()
            }
            _ => unreachable!(),
        };
        Ok(Some(out))
    }

    /// ĵ as multipliers per label.
    pub fn rigging(&self, trunc: &ChannelTruncation) -> Result<Vec<f64>, WeylError> {
        let weights = match self.params.rigging {
            RiggingChoice::Laplace => RiggingWeights::Laplace { radius: self.params.radius },
            RiggingChoice::Identity => RiggingWeights::Identity,
            RiggingChoice::Dtn { lambda0 } => {
                let lam = self.symbol_values(Complex64::new(lambda0, 0.0), trunc, SymbolKind::Dtn)?;
                RiggingWeights::PerMode(lam.iter().map(|v| v.re.sqrt()).collect())
            }
        };
        weights.weights(trunc)
    }

    /// M at z (Im z = 0 read as λ + i0).
    fn weyl_at(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        self.check_truncation(trunc)?;
        if let Some(d) = self.weyl_diag(z, trunc)? {
            return Ok(ComplexMatrix::from_diag(&d));
        }
        // non-diagonal couplings on the circle
        let alpha = self.params.alpha.matrix(trunc);
        match self.params.kind {
            ModelKind::DiskDirichletRobin => {
                let w = self.rigging(trunc)?;
                let lam = self.symbol_values(z, trunc, SymbolKind::Dtn)?;
                let n = trunc.n();
                Ok(ComplexMatrix::from_fn(n, n, |i, j| {
                    let d = if i == j { lam[i] } else { Complex64::new(0.0, 0.0) };
                    (alpha[(i, j)] - d) / (w[i] * w[j])
                }))
            }
            _ => {
                let n = self.robin_n(z, trunc)?;
                let lu = LuFactors::factor(&alpha).map_err(|_| WeylError::ModelDomainError("α is not invertible in mode space".into()))?;
                let inv = lu.inverse();
                Ok(&ComplexMatrix::from_diag(&n) - &inv)
            }
        }
    }

    fn robin_at(&self, z: Complex64, trunc: &ChannelTruncation) -> Option<Result<RobinParts, WeylError>> {
        if !self.params.kind.is_robin_type() {
            return None;
        }
        Some((|| {
            self.check_truncation(trunc)?;
            let n = self.robin_n(z, trunc)?;
            Ok(RobinParts { n: ComplexMatrix::from_diag(&n), alpha: self.robin_alpha(trunc) })
        })())
    }

    /// Per-mode symbols at a spectral point.
    pub fn mode_symbols(&self, point: SpectralPoint, trunc: &ChannelTruncation, kind: SymbolKind) -> Result<ModeSymbolTable, ZooError> {
        if trunc.max_order() > specfun::ORDER_CAP {
            return Err(SpecfunError::OrderCapExceeded { order: trunc.max_order(), cap: specfun::ORDER_CAP }.into());
        }
        self.check_truncation(trunc)?;
        if point.is_boundary() {
            if let Some(reason) = self.exclusion(point.lambda, trunc) {
                return Err(WeylError::ExclusionSetHit { lambda: point.lambda, reason }.into());
            }
        }
        let vals = self.symbol_values(point.z(), trunc, kind)?;
        Ok(ModeSymbolTable { model: self.params.kind, point, kind, entries: trunc.labels().iter().copied().zip(vals).collect() })
    }

    /// Continuum thresholds of the model.
    pub fn thresholds(&self) -> Vec<f64> {
        match self.params.kind {
            ModelKind::JacobiHalfline => vec![-BAND_EDGE, BAND_EDGE],
            k if k.has_interior() && self.params.v0 != 0.0 => vec![0.0, self.params.v0],
            _ => vec![0.0],
        }
    }
}

impl WeylModel for ModelHandle {
    fn name(&self) -> String {
        self.params.kind.id().to_string()
    }

    fn check_truncation(&self, trunc: &ChannelTruncation) -> Result<(), WeylError> {
        let ok = trunc.n() > 0
            && trunc.labels().iter().all(|l| match (self.params.kind, l) {
                (ModelKind::DeltaLine | ModelKind::JacobiHalfline, ModeLabel::Scalar) => trunc.n() == 1,
                (ModelKind::SphereDeltaShell, ModeLabel::Spherical { l, m }) => m.unsigned_abs() as usize <= *l,
                (k, ModeLabel::Fourier(_)) => k.dimension() == 2,
                _ => false,
            });
        if !ok {
            return Err(WeylError::InvalidTruncation(format!("labels do not fit the {} boundary space", self.params.kind)));
        }
        if trunc.max_order() > specfun::ORDER_CAP {
            return Err(WeylError::InvalidTruncation(format!("order {} exceeds the cap {}", trunc.max_order(), specfun::ORDER_CAP)));
        }
        Ok(())
    }

    fn weyl(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        if z.im == 0.0 || !(z.re.is_finite() && z.im.is_finite()) {
            return Err(WeylError::InvalidPoint(format!("M(z) needs Im z ≠ 0, got {z}")));
        }
        self.weyl_at(z, trunc)
    }

    fn weyl_boundary(&self, lambda: f64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        self.weyl_at(Complex64::new(lambda, 0.0), trunc)
    }

    fn has_direct_boundary(&self) -> bool {
        true
    }

    fn exclusion(&self, lambda: f64, trunc: &ChannelTruncation) -> Option<String> {
        for t in self.thresholds() {
            if (lambda - t).abs() <= EXCLUSION_GUARD * t.abs().max(1.0) {
                return Some(format!("threshold λ = {t}"));
            }
        }
        let inside = lambda - self.params.v0;
        if inside <= 0.0 {
            return None;
        }
        let k = inside.sqrt();
        let (r, max) = (self.params.radius, trunc.max_order());
        let hit = match self.params.kind {
            ModelKind::CircleDirichletFree => near_j_zero(Geometry::Circle, max, k, r).map(|o| o.map(|m| format!("J_{m}(kR) = 0"))),
            ModelKind::CircleNeumannFree => near_jprime_zero(max, k, r).map(|o| o.map(|m| format!("J_{m}'(kR) = 0"))),
            _ => Ok(None),
        };
        hit.unwrap_or_else(|e| Some(e.to_string()))
    }

    fn robin_parts(&self, z: Complex64, trunc: &ChannelTruncation) -> Option<Result<RobinParts, WeylError>> {
        if z.im == 0.0 {
            return Some(Err(WeylError::InvalidPoint(format!("N(z) needs Im z ≠ 0, got {z}"))));
        }
        self.robin_at(z, trunc)
    }

    fn robin_parts_boundary(&self, lambda: f64, trunc: &ChannelTruncation) -> Option<Result<RobinParts, WeylError>> {
        self.robin_at(Complex64::new(lambda, 0.0), trunc)
    }
}
