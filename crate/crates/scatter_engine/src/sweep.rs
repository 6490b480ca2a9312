use num_complex::Complex64;
use rayon::prelude::*;
use weyl_core::{
    boundary_limit, boundary_limit_from_matrix, richardson, BoundaryLimit, BoundaryOptions, BoundaryStrategy, ChannelTruncation, WeylError,
    WeylModel,
};

use crate::{robin_form_smatrix, smatrix, ScatterError, ScatteringMatrixSample, SmatrixOptions};

/// Outcome at one grid point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub lambda: f64,
    pub result: Result<ScatteringMatrixSample, ScatterError>,
}

/// The boundary limit the engine works with: of N for Robin-type models,
/// of M otherwise. The second value is α for the Robin route.
pub fn model_boundary_limit(
    model: &dyn WeylModel,
    lambda: f64,
    trunc: &ChannelTruncation,
    strategy: BoundaryStrategy,
    opts: BoundaryOptions,
) -> Result<(BoundaryLimit, Option<numkernel::ComplexMatrix>), ScatterError> {
    model.check_truncation(trunc)?;
    if let Some(reason) = model.exclusion(lambda, trunc) {
        return Err(WeylError::ExclusionSetHit { lambda, reason }.into());
    }
    let robin = match strategy {
        BoundaryStrategy::Direct => model.robin_parts_boundary(lambda, trunc),
        BoundaryStrategy::Extrapolate(_) => model.robin_parts(Complex64::new(lambda, 1.0), trunc),
    };
    match robin {
        None => Ok((boundary_limit(model, lambda, trunc, strategy, opts)?, None)),
        Some(parts) => {
            let parts = parts?;
            let (n, err) = match strategy {
                BoundaryStrategy::Direct => (parts.n, None),
                BoundaryStrategy::Extrapolate(schedule) => {
                    let ex = richardson(&schedule, |eps| match model.robin_parts(Complex64::new(lambda, eps), trunc) {
                        Some(r) => r.map(|p| p.n),
                        None => Err(WeylError::UnsupportedBoundaryPoint { lambda }),
                    })?;
                    (ex.value, Some(ex.error_estimate))
                }
            };
            Ok((boundary_limit_from_matrix(lambda, n, trunc, opts, err)?, Some(parts.alpha)))
        }
    }
}

/// S(λ) for a model, through the Robin form when the model offers one.
pub fn model_smatrix(
    model: &dyn WeylModel,
    lambda: f64,
    trunc: &ChannelTruncation,
    strategy: BoundaryStrategy,
    bopts: BoundaryOptions,
    sopts: &SmatrixOptions,
) -> Result<ScatteringMatrixSample, ScatterError> {
    let (bl, alpha) = model_boundary_limit(model, lambda, trunc, strategy, bopts)?;
    match alpha {
        Some(a) => robin_form_smatrix(&bl, &a, sopts),
        None => smatrix(&bl, sopts),
    }
}

/// One sample per grid point, in grid order. Points are evaluated in
/// parallel; a failing point does not stop the others.
pub fn smatrix_sweep(
    model: &dyn WeylModel,
    grid: &[f64],
    trunc: &ChannelTruncation,
    strategy: BoundaryStrategy,
    bopts: BoundaryOptions,
    sopts: &SmatrixOptions,
) -> Vec<SweepPoint> {
    grid.par_iter()
        .map(|&lambda| SweepPoint { lambda, result: model_smatrix(model, lambda, trunc, strategy, bopts, sopts) })
        .collect()
}
