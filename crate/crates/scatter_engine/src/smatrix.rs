use num_complex::Complex64;
use numkernel::{psd_sqrt, solve_with_cap, ComplexMatrix, LinalgError, LuFactors, DEFAULT_CONDITION_CAP};
use serde::{Deserialize, Serialize};
use weyl_core::{boundary_limit_from_matrix, BoundaryLimit, BoundaryOptions};

use crate::{eigenphases, ScatterError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmatrixOptions {
    /// Samples with ‖SS* - I‖_F above this are flagged.
    pub unitarity_tol: f64,
    pub condition_cap: f64,
}

impl Default for SmatrixOptions {
    fn default() -> Self {
        Self { unitarity_tol: 1e-8, condition_cap: DEFAULT_CONDITION_CAP }
    }
}

/// S(λ) on the channel space.
#[derive(Debug, Clone)]
pub struct ScatteringMatrixSample {
    pub lambda: f64,
    /// r×r.
    pub s: ComplexMatrix,
    /// n×r.
    pub channel_isometry: ComplexMatrix,
    pub channel_labels: Vec<String>,
    pub unitarity_defect: f64,
    /// Principal arguments in (-π, π], ascending.
    pub eigenphases: Vec<f64>,
    pub flagged: bool,
    /// Condition estimate of the matrix that was inverted.
    pub condition: f64,
}

impl ScatteringMatrixSample {
    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    /// S written back on the full truncation: P S P* + (I - PP*).
    pub fn embedded(&self) -> ComplexMatrix {
        let p = &self.channel_isometry;
        let n = p.rows();
        let pp = p * &p.adjoint();
        let rest = &ComplexMatrix::identity(n) - &pp;
        &(&(p * &self.s) * &p.adjoint()) + &rest
    }

    fn build(lambda: f64, bl: &BoundaryLimit, full: &ComplexMatrix, condition: f64, opts: &SmatrixOptions) -> Self {
        let p = &bl.channel_isometry;
        let s = &(&p.adjoint() * full) * p;
        let r = s.rows();
        let defect = (&(&s * &s.adjoint()) - &ComplexMatrix::identity(r)).frobenius_norm();
        let phases = eigenphases(&s).map(|v| v.into_iter().map(|(phase, _)| phase).collect()).unwrap_or_default();
        Self {
            lambda,
            s,
            channel_isometry: p.clone(),
            channel_labels: bl.channel_labels.clone(),
            unitarity_defect: defect,
            eigenphases: phases,
            flagged: !(defect <= opts.unitarity_tol),
            condition,
        }
    }

    fn trivial(bl: &BoundaryLimit) -> Self {
        Self {
            lambda: bl.lambda,
            s: ComplexMatrix::identity(0),
            channel_isometry: bl.channel_isometry.clone(),
            channel_labels: Vec::new(),
            unitarity_defect: 0.0,
            eigenphases: Vec::new(),
            flagged: false,
            condition: 1.0,
        }
    }
}

fn sqrt_im(bl: &BoundaryLimit) -> Result<ComplexMatrix, ScatterError> {
    psd_sqrt(&bl.im_m, bl.rank_tol).map_err(|e| match e {
        LinalgError::IndefiniteInput { .. } => ScatterError::IndefiniteImPart(e.to_string()),
        other => ScatterError::Linalg(other),
    })
}

/// S = P*(I - 2i·Q·M⁻¹·Q)P with Q = (Im M)^{1/2}.
pub fn smatrix(bl: &BoundaryLimit, opts: &SmatrixOptions) -> Result<ScatteringMatrixSample, ScatterError> {
    if bl.rank() == 0 {
        return Ok(ScatteringMatrixSample::trivial(bl));
    }
    let q = sqrt_im(bl)?;
    let sol = solve_with_cap(&bl.m_plus, &q, opts.condition_cap).map_err(|e| match e {
        LinalgError::SingularMatrix { condition } => ScatterError::SingularWeylValue { lambda: bl.lambda, condition },
        other => ScatterError::Linalg(other),
    })?;
    let n = bl.m_plus.rows();
    let full = &ComplexMatrix::identity(n) - &(&q * &sol.x).scale(Complex64::new(0.0, 2.0));
    Ok(ScatteringMatrixSample::build(bl.lambda, bl, &full, sol.condition, opts))
}

/// S = P*(I + 2i·Q·(I - αN)⁻¹·α·Q)P, where `bl_of_n` is the boundary
/// limit of N and α is Hermitian.
pub fn robin_form_smatrix(bl_of_n: &BoundaryLimit, alpha: &ComplexMatrix, opts: &SmatrixOptions) -> Result<ScatteringMatrixSample, ScatterError> {
    let n = bl_of_n.m_plus.rows();
    if alpha.rows() != n || alpha.cols() != n {
        return Err(ScatterError::BadCoupling { expected: n, detail: format!("got {}x{}", alpha.rows(), alpha.cols()) });
    }
    let asym = alpha.hermitian_defect();
    if asym > 1e-12 * (1.0 + alpha.frobenius_norm()) {
        return Err(ScatterError::BadCoupling { expected: n, detail: format!("asymmetry {asym:.3e}") });
    }
    if bl_of_n.rank() == 0 {
        return Ok(ScatteringMatrixSample::trivial(bl_of_n));
    }
    let q = sqrt_im(bl_of_n)?;
    let pencil = &ComplexMatrix::identity(n) - &(alpha * &bl_of_n.m_plus);
    let sol = solve_with_cap(&pencil, &(alpha * &q), opts.condition_cap).map_err(|e| match e {
        LinalgError::SingularMatrix { condition } => ScatterError::SingularRobinPencil { lambda: bl_of_n.lambda, condition },
        other => ScatterError::Linalg(other),
    })?;
    let full = &ComplexMatrix::identity(n) + &(&q * &sol.x).scale(Complex64::new(0.0, 2.0));
    Ok(ScatteringMatrixSample::build(bl_of_n.lambda, bl_of_n, &full, sol.condition, opts))
}

/// The same formula applied to the transposed triple, whose Weyl function
/// is -M⁻¹. Only its unitarity is meaningful; it is not identified with
/// the scattering matrix of the reversed pair.
pub fn transposed_pair_smatrix(bl: &BoundaryLimit, opts: &SmatrixOptions) -> Result<ScatteringMatrixSample, ScatterError> {
    let lu = LuFactors::factor(&bl.m_plus).map_err(|_| ScatterError::SingularWeylValue { lambda: bl.lambda, condition: f64::INFINITY })?;
    let condition = lu.condition_estimate();
    if !(condition <= opts.condition_cap) {
        return Err(ScatterError::SingularWeylValue { lambda: bl.lambda, condition });
    }
    let minus_inv = lu.inverse().scale_real(-1.0);
    let bl_t = boundary_limit_from_matrix(bl.lambda, minus_inv, &bl.truncation, BoundaryOptions::default(), None)?;
    smatrix(&bl_t, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use numkernel::c64;
    use weyl_core::ChannelTruncation;

    fn bl(m: ComplexMatrix, t: &ChannelTruncation) -> BoundaryLimit {
        boundary_limit_from_matrix(1.0, m, t, BoundaryOptions::default(), None).unwrap()
    }

    #[test]
    fn scalar_i_gives_minus_one() {
        let t = ChannelTruncation::scalar();
        let s = smatrix(&bl(ComplexMatrix::scalar(c64(0.0, 1.0)), &t), &SmatrixOptions::default()).unwrap();
        assert_eq!(s.s[(0, 0)], c64(-1.0, 0.0));
        assert_eq!(s.eigenphases, vec![std::f64::consts::PI]);
    }

    #[test]
    fn zero_imaginary_part_is_empty_identity() {
        let t = ChannelTruncation::scalar();
        let s = smatrix(&bl(ComplexMatrix::scalar(c64(2.0, 0.0)), &t), &SmatrixOptions::default()).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.unitarity_defect, 0.0);
    }

    #[test]
    fn robin_alpha_zero_is_identity() {
        let t = ChannelTruncation::fourier(1);
        let n = ComplexMatrix::from_diag(&[c64(0.3, 0.2), c64(-1.0, 0.5), c64(0.3, 0.2)]);
        let s = robin_form_smatrix(&bl(n, &t), &ComplexMatrix::zeros(3, 3), &SmatrixOptions::default()).unwrap();
        assert_eq!(s.s, ComplexMatrix::identity(3));
    }

    #[test]
    fn singular_weyl_value_reported() {
        let t = ChannelTruncation::fourier(1);
        let m = ComplexMatrix::from_diag(&[c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 1.0)]);
        let r = smatrix(&bl(m, &t), &SmatrixOptions::default());
        assert!(matches!(r, Err(ScatterError::SingularWeylValue { .. })));
    }
}
