//! Bessel-family special functions for the radially symmetric models.
//!
//! Real-argument cylindrical functions J_m, Y_m and the Hankel function
//! H_m = J_m + iY_m come from a Miller-type downward recurrence normalised by
//! J_0 + 2ΣJ_2k = 1, Neumann series for Y_0 and Y_1, and the Hankel
//! asymptotic expansion for x > 25. Spherical functions use closed forms for
//! y_0, y_1, upward recurrence for y_l, and a continued fraction for j_l
//! normalised through the Wronskian (ascending series when x is small).
//!
//! The [`logderiv`] module evaluates the ratios f'/f directly for complex
//! arguments in the closed upper half-plane. The models only need these
//! ratios, and the ratios stay finite where J_m and Y_m themselves underflow
//! or overflow (large order, small argument).

mod cylindrical;
mod error;
pub mod logderiv;
mod spherical;

pub use cylindrical::{bessel_jy, bessel_jy_seq, hankel1, hankel1_seq, BesselEval, HankelEval};
pub use error::SpecfunError;
pub use spherical::{spherical_jyh, spherical_jyh_seq, SphericalEval};

/// Largest order accepted by any routine in this crate.
pub const ORDER_CAP: usize = 256;
/// Largest real argument accepted.
pub const X_MAX: f64 = 1e8;
/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) fn check_real(order: usize, x: f64) -> Result<(), SpecfunError> {
    if order > ORDER_CAP {
        return Err(SpecfunError::OrderCapExceeded { order, cap: ORDER_CAP });
    }
    if !(x > 0.0 && x <= X_MAX) {
        return Err(SpecfunError::DomainError(format!("argument {x} outside (0, {X_MAX}]")));
    }
    Ok(())
}
