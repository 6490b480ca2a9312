use num_complex::Complex64;
use numkernel::{herm_eig, ComplexMatrix};
use serde::{Deserialize, Serialize};

use crate::{richardson, ChannelTruncation, EpsSchedule, SpectralPoint, WeylError, WeylModel, WeylSample, NEVANLINNA_TOL};

/// Default relative rank tolerance for ran Im M(λ+i0).
pub const DEFAULT_RANK_REL_TOL: f64 = 1e-8;
/// Below this (relative to 1 + ‖M‖) the whole of Im M is treated as zero.
const ABS_RANK_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryStrategy {
    Direct,
    Extrapolate(EpsSchedule),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOptions {
    pub rank_rel_tol: f64,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self { rank_rel_tol: DEFAULT_RANK_REL_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BoundaryWarning {
    /// An eigenvalue of Im M lies within a factor 10 of the rank tolerance.
    RankAmbiguous { eigenvalue: f64, rank_tol: f64 },
}

/// M(λ+i0) together with the channel space ran Im M(λ+i0).
#[derive(Debug, Clone)]
pub struct BoundaryLimit {
    pub lambda: f64,
    pub m_plus: ComplexMatrix,
    /// Hermitian part (M - M*)/(2i) with roundoff-negative eigenvalues
    /// clipped to zero.
    pub im_m: ComplexMatrix,
    /// n×r, orthonormal eigenvectors of `im_m` with eigenvalue > rank_tol.
    pub channel_isometry: ComplexMatrix,
    pub channel_labels: Vec<String>,
    pub rank_tol: f64,
    pub truncation: ChannelTruncation,
    pub extrapolation_error: Option<f64>,
    pub warnings: Vec<BoundaryWarning>,
}

impl BoundaryLimit {
    pub fn rank(&self) -> usize {
        self.channel_isometry.cols()
    }
}

/// Smallest eigenvalue of (M - M*)/(2i).
pub fn min_im_eigenvalue(m: &ComplexMatrix) -> Result<f64, WeylError> {
    let eig = herm_eig(&m.imag_part())?;
    Ok(eig.eigenvalues.first().copied().unwrap_or(0.0))
}

fn check_nevanlinna(z: Complex64, m: &ComplexMatrix) -> Result<(), WeylError> {
    if !m.is_finite() {
        return Err(WeylError::ModelDomainError(format!("non-finite Weyl matrix at z = {z}")));
    }
    let eig = herm_eig(&m.imag_part())?;
    let bound = NEVANLINNA_TOL * (1.0 + m.frobenius_norm());
    // Im z < 0 flips the sign of Im M.
    let min = if z.im < 0.0 { -eig.eigenvalues.last().copied().unwrap_or(0.0) } else { eig.eigenvalues.first().copied().unwrap_or(0.0) };
    if min < -bound {
        return Err(WeylError::NevanlinnaViolation { z_re: z.re, z_im: z.im, min_eigenvalue: min });
    }
    Ok(())
}

/// Sample M at a spectral point. Boundary points need a model with direct
/// boundary values and must avoid the model's exclusion set.
pub fn evaluate_weyl(model: &dyn WeylModel, point: SpectralPoint, trunc: &ChannelTruncation) -> Result<WeylSample, WeylError> {
    model.check_truncation(trunc)?;
    let m = if point.is_boundary() {
        if !model.has_direct_boundary() {
            return Err(WeylError::UnsupportedBoundaryPoint { lambda: point.lambda });
        }
        if let Some(reason) = model.exclusion(point.lambda, trunc) {
            return Err(WeylError::ExclusionSetHit { lambda: point.lambda, reason });
        }
        model.weyl_boundary(point.lambda, trunc)?
    } else {
        model.weyl(point.z(), trunc)?
    };
    check_nevanlinna(point.z(), &m)?;
    Ok(WeylSample { z: point.z(), boundary: point.is_boundary(), m, truncation: trunc.clone() })
}

/// M(λ+i0) and its channel space.
pub fn boundary_limit(
    model: &dyn WeylModel,
    lambda: f64,
    trunc: &ChannelTruncation,
    strategy: BoundaryStrategy,
    opts: BoundaryOptions,
) -> Result<BoundaryLimit, WeylError> {
    model.check_truncation(trunc)?;
    if let Some(reason) = model.exclusion(lambda, trunc) {
        return Err(WeylError::ExclusionSetHit { lambda, reason });
    }
    match strategy {
        BoundaryStrategy::Direct => {
            if !model.has_direct_boundary() {
                return Err(WeylError::UnsupportedBoundaryPoint { lambda });
            }
            let m = model.weyl_boundary(lambda, trunc)?;
            boundary_limit_from_matrix(lambda, m, trunc, opts, None)
        }
        BoundaryStrategy::Extrapolate(schedule) => {
            let ex = richardson(&schedule, |eps| model.weyl(Complex64::new(lambda, eps), trunc))?;
            boundary_limit_from_matrix(lambda, ex.value, trunc, opts, Some(ex.error_estimate))
        }
    }
}

/// Build the [`BoundaryLimit`] of a given M(λ+i0).
///
/// If every retained eigenvector of Im M is a coordinate vector (the
/// mode-diagonal case) the channels keep the truncation order and labels.
/// Otherwise they are ordered by decreasing eigenvalue, labelled `h0, h1, …`
/// and each column is rotated so that its largest entry is real positive.
pub fn boundary_limit_from_matrix(
    lambda: f64,
    m_plus: ComplexMatrix,
    trunc: &ChannelTruncation,
    opts: BoundaryOptions,
    extrapolation_error: Option<f64>,
) -> Result<BoundaryLimit, WeylError> {
    let n = trunc.n();
    if m_plus.rows() != n || m_plus.cols() != n {
        return Err(WeylError::InvalidTruncation(format!("M is {}x{}, truncation has {n} modes", m_plus.rows(), m_plus.cols())));
    }
    if !m_plus.is_finite() {
        return Err(WeylError::ModelDomainError(format!("non-finite M(λ+i0) at λ = {lambda}")));
    }
    let raw = m_plus.imag_part();
    let eig = herm_eig(&raw)?;
    let max_eig = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let floor = ABS_RANK_FLOOR * (1.0 + m_plus.frobenius_norm());
    let rank_tol = (opts.rank_rel_tol * max_eig).max(floor);
    let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let nev_bound = NEVANLINNA_TOL * (1.0 + m_plus.frobenius_norm());
    if min_eig < -nev_bound.max(rank_tol) {
        return Err(WeylError::NevanlinnaViolation { z_re: lambda, z_im: 0.0, min_eigenvalue: min_eig });
    }
    let im_m = if min_eig < 0.0 { eig.reconstruct_with(|w| w.max(0.0)) } else { raw.hermitian_part() };

    let mut warnings = Vec::new();
    for &w in &eig.eigenvalues {
        if w > rank_tol / 10.0 && w < rank_tol * 10.0 {
            warnings.push(BoundaryWarning::RankAmbiguous { eigenvalue: w, rank_tol });
        }
    }
    let mut kept: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > rank_tol).collect();
    let coordinate = |k: usize| -> Option<usize> {
        let col = eig.eigenvectors.col(k);
        let nz: Vec<usize> = (0..n).filter(|&i| col[i] != Complex64::new(0.0, 0.0)).collect();
        (nz.len() == 1 && col[nz[0]] == Complex64::new(1.0, 0.0)).then_some(nz[0])
    };
    let coords: Option<Vec<usize>> = kept.iter().map(|&k| coordinate(k)).collect();
    let (isometry, labels) = match coords {
        Some(mut idx) => {
            idx.sort_unstable();
            let mut p = ComplexMatrix::zeros(n, idx.len());
            for (c, &i) in idx.iter().enumerate() {
                p[(i, c)] = Complex64::new(1.0, 0.0);
            }
            (p, idx.iter().map(|&i| trunc.labels()[i].to_string()).collect())
        }
        None => {
            kept.reverse();
            let mut p = ComplexMatrix::zeros(n, kept.len());
            for (c, &k) in kept.iter().enumerate() {
                let mut col = eig.eigenvectors.col(k);
                let big = (0..n).fold(0, |b, i| if col[i].norm() > col[b].norm() * (1.0 + 1e-12) { i } else { b });
                let phase = col[big].conj() / col[big].norm();
                for x in col.iter_mut() {
                    *x *= phase;
                }
                p.set_col(c, &col);
            }
            (p, (0..kept.len()).map(|j| format!("h{j}")).collect())
        }
    };
    Ok(BoundaryLimit {
        lambda,
        m_plus,
        im_m,
        channel_isometry: isometry,
        channel_labels: labels,
        rank_tol,
        truncation: trunc.clone(),
        extrapolation_error,
        warnings,
    })
}
