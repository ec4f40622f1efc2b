//! Numeric kernels shared by the physics modules: Hermite polynomials,
//! deterministic adaptive quadrature and Richardson-extrapolated
//! finite-difference stencils.
//!
//! Everything here is pure and re-entrant; there is no shared mutable state.

mod hermite;
mod quadrature;
mod stencil;

pub use hermite::{hermite, HERMITE_MAX_ORDER};
pub use quadrature::{integrate, Quadrature, QuadratureSpec};
pub use stencil::{diff, Axis, DerivOrder, StencilSpec, MAX_RICHARDSON_LEVELS};
