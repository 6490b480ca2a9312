//! Exactly solvable models: a δ-interaction on the line, the free Jacobi
//! half-line, exterior disk problems with Dirichlet/Neumann and Robin
//! conditions, circle transmission problems and δ-shells on circles and
//! spheres. Each model is a [`ModelHandle`] implementing
//! [`weyl_core::WeylModel`]; most also have an independent scattering
//! oracle in [`analytic_oracle_smatrix`].

mod error;
pub mod fd;
mod handle;
pub mod jacobi;
mod oracle;
mod params;
pub mod symbols;

pub use error::ZooError;
pub use fd::FdDeltaLine;
pub use handle::{ModeSymbolTable, ModelHandle, SymbolKind};
pub use jacobi::{Closure, JacobiChain};
pub use oracle::{analytic_oracle_smatrix, delta_line_even, jacobi_s, ORACLE_CHAIN_SITES, ORACLE_M_AGREEMENT};
pub use params::{Coupling, ModelKind, ModelParams, RiggingChoice};
