//! Scattering matrices from boundary values of Weyl functions.
//!
//! For a boundary value M = M(λ+i0) with Q = (Im M)^{1/2} the scattering
//! matrix on the channel space ran Im M is
//!
//! S = P* (I - 2i·Q·M⁻¹·Q) P,
//!
//! where P is the channel isometry. For Robin-type pairs with
//! M = N - α⁻¹ the equivalent form S = P* (I + 2i·Q·(I - αN)⁻¹·α·Q) P is
//! used so that α may vanish on some modes.

mod eigenphase;
mod error;
mod smatrix;
mod sweep;

pub use eigenphase::{eigenphase_report, eigenphases, EigenphaseRow};
pub use error::ScatterError;
pub use smatrix::{robin_form_smatrix, smatrix, transposed_pair_smatrix, ScatteringMatrixSample, SmatrixOptions};
pub use sweep::{model_boundary_limit, model_smatrix, smatrix_sweep, SweepPoint};
