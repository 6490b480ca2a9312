use numkernel::ComplexMatrix;
use serde::{Deserialize, Serialize};

use crate::WeylError;

/// Geometric schedule ε_k = eps0·2^{-k}, k = 0..=levels, with polynomial
/// extrapolation of the given degree to ε = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsSchedule {
    pub eps0: f64,
    pub levels: usize,
    pub order: usize,
}

impl Default for EpsSchedule {
    fn default() -> Self {
        Self { eps0: 1e-2, levels: 6, order: 2 }
    }
}

impl EpsSchedule {
    pub fn epsilons(&self) -> Vec<f64> {
        (0..=self.levels).map(|k| self.eps0 * 0.5f64.powi(k as i32)).collect()
    }

    fn validate(&self) -> Result<(), WeylError> {
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) || self.levels < self.order || self.order == 0 {
            return Err(WeylError::InvalidPoint(format!("bad ε schedule {self:?}")));
        }
        Ok(())
    }
}

/// Extrapolated limit with its error estimate.
#[derive(Debug, Clone)]
pub struct Extrapolated {
    pub value: ComplexMatrix,
    /// ‖E_last - E_prev‖_F between the last two window estimates.
    pub error_estimate: f64,
    /// Successive differences ‖E_{j+1} - E_j‖_F.
    pub differences: Vec<f64>,
}

/// Limit of f(ε) as ε → 0⁺ from samples on the schedule.
///
/// Each window of `order + 1` consecutive samples gives one estimate (the
/// interpolating polynomial evaluated at 0). The estimates must settle:
/// if the last difference is not smaller than the one before and is above
/// roundoff, the extrapolation is reported as diverged.
pub fn richardson(schedule: &EpsSchedule, mut f: impl FnMut(f64) -> Result<ComplexMatrix, WeylError>) -> Result<Extrapolated, WeylError> {
    schedule.validate()?;
    let eps = schedule.epsilons();
    let samples: Vec<ComplexMatrix> = eps.iter().map(|&e| f(e)).collect::<Result<_, _>>()?;
    let d = schedule.order;
    let mut estimates = Vec::new();
    for start in 0..eps.len() - d {
        let xs = &eps[start..=start + d];
        let mut acc = ComplexMatrix::zeros(samples[0].rows(), samples[0].cols());
        for i in 0..=d {
            let mut w = 1.0;
            for j in 0..=d {
                if j != i {
                    w *= xs[j] / (xs[j] - xs[i]);
                }
            }
            acc = &acc + &samples[start + i].scale_real(w);
        }
        estimates.push(acc);
    }
    let differences: Vec<f64> = estimates.windows(2).map(|p| (&p[1] - &p[0]).frobenius_norm()).collect();
    let value = estimates.pop().expect("at least one window");
    let floor = 1e-12 * (1.0 + value.frobenius_norm());
    let error_estimate = match differences.last() {
        Some(&last) => last,
        None => (&value - samples.last().expect("non-empty")).frobenius_norm(),
    };
    if differences.len() >= 2 {
        let last = differences[differences.len() - 1];
        let prev = differences[differences.len() - 2];
        if last > floor && last >= prev {
            return Err(WeylError::ExtrapolationDiverged { differences });
        }
    }
    Ok(Extrapolated { value, error_estimate, differences })
}

#[cfg(test)]
mod tests {
    use super::*;
    use numkernel::c64;

    #[test]
    fn quadratic_is_exact() {
        let s = EpsSchedule::default();
        let r = richardson(&s, |e| Ok(ComplexMatrix::scalar(c64(1.0 + 3.0 * e - 2.0 * e * e, e)))).unwrap();
        assert!((r.value[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn analytic_function_converges() {
        let s = EpsSchedule::default();
        let r = richardson(&s, |e| Ok(ComplexMatrix::scalar(c64(0.0, e).exp()))).unwrap();
        assert!((r.value[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!(r.error_estimate < 1e-8);
    }

    #[test]
    fn divergent_sequence_rejected() {
        let s = EpsSchedule::default();
        let r = richardson(&s, |e| Ok(ComplexMatrix::scalar(c64(1.0 / e, 0.0))));
        assert!(matches!(r, Err(WeylError::ExtrapolationDiverged { .. })));
    }
}
