use num_complex::Complex64;
use numkernel::ComplexMatrix;

use crate::{ChannelTruncation, WeylError};

/// N(z) and α with M(z) = N(z) - α⁻¹, for pairs whose perturbed operator
/// is a Robin-type condition α·Γ₁ = Γ₀. Keeping N and α separate lets the
/// scattering matrix be formed without inverting α.
#[derive(Debug, Clone)]
pub struct RobinParts {
    pub n: ComplexMatrix,
    /// Hermitian coupling matrix in mode space.
    pub alpha: ComplexMatrix,
}

/// A Weyl function sampled on finite truncations of the boundary space.
pub trait WeylModel: Send + Sync {
    fn name(&self) -> String;

    /// Rejects truncations the model cannot represent.
    fn check_truncation(&self, trunc: &ChannelTruncation) -> Result<(), WeylError>;

    /// M(z) for Im z ≠ 0.
    fn weyl(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError>;

    /// M(λ+i0) from the model's own outgoing-solution formula.
    fn weyl_boundary(&self, lambda: f64, _trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        Err(WeylError::UnsupportedBoundaryPoint { lambda })
    }

    fn has_direct_boundary(&self) -> bool {
        false
    }

    /// Reason why λ is an exceptional point, if it is within the guard
    /// band of one.
    fn exclusion(&self, _lambda: f64, _trunc: &ChannelTruncation) -> Option<String> {
        None
    }

    /// Robin decomposition at z (Im z ≠ 0), if the model has one.
    fn robin_parts(&self, _z: Complex64, _trunc: &ChannelTruncation) -> Option<Result<RobinParts, WeylError>> {
        None
    }

    /// Robin decomposition at λ + i0.
    fn robin_parts_boundary(&self, _lambda: f64, _trunc: &ChannelTruncation) -> Option<Result<RobinParts, WeylError>> {
        None
    }
}

/// M(z) ≡ C on the upper half-plane and C* on the lower one. With
/// Im C ⪰ 0 this is a (constant) Nevanlinna function.
#[derive(Debug, Clone)]
pub struct ConstantWeyl {
    pub value: ComplexMatrix,
}

impl WeylModel for ConstantWeyl {
    fn name(&self) -> String {
        "constant".into()
    }

    fn check_truncation(&self, trunc: &ChannelTruncation) -> Result<(), WeylError> {
        if trunc.n() != self.value.rows() {
            return Err(WeylError::InvalidTruncation(format!("constant model has {} modes, truncation {}", self.value.rows(), trunc.n())));
        }
        Ok(())
    }

    fn weyl(&self, z: Complex64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        self.check_truncation(trunc)?;
        Ok(if z.im >= 0.0 { self.value.clone() } else { self.value.adjoint() })
    }

    fn weyl_boundary(&self, _lambda: f64, trunc: &ChannelTruncation) -> Result<ComplexMatrix, WeylError> {
        self.check_truncation(trunc)?;
        Ok(self.value.clone())
    }

    fn has_direct_boundary(&self) -> bool {
        true
    }
}
