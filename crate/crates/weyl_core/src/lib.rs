//! Weyl functions of boundary triples and their boundary values.
//!
//! A model supplies M(z) on a finite truncation of its boundary space
//! through the [`WeylModel`] trait. This crate checks the Nevanlinna
//! structure of those samples, takes the boundary value M(λ+i0) either
//! directly or by ε-extrapolation, and splits off the channel space
//! ran Im M(λ+i0) on which the scattering matrix acts.

mod audit;
mod boundary;
mod error;
mod extrapolate;
mod model;
mod types;

pub use audit::{nevanlinna_audit, AuditPoint, DecayRow, NevanlinnaAudit};
pub use boundary::{
    boundary_limit, boundary_limit_from_matrix, evaluate_weyl, min_im_eigenvalue, BoundaryLimit, BoundaryOptions, BoundaryStrategy,
    BoundaryWarning, DEFAULT_RANK_REL_TOL,
};
pub use error::WeylError;
pub use extrapolate::{richardson, EpsSchedule, Extrapolated};
pub use model::{ConstantWeyl, RobinParts, WeylModel};
pub use types::{ChannelTruncation, ModeLabel, RiggingWeights, SpectralPoint, WeylSample};

/// Nevanlinna tolerance: Im M(z) ⪰ -NEVANLINNA_TOL·(1 + ‖M‖).
pub const NEVANLINNA_TOL: f64 = 1e-10;
