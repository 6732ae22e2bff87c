//! Numerical verification of invariant presymplectic forms on mapping spaces
//! over the circle, their moment maps, and the Lie-algebra cohomology class
//! that obstructs equivariance.
//!
//! Modules, bottom-up:
//!
//! * [`spectral`]: calculus on `S¹` (spectral derivative, quadrature, bracket).
//! * [`jetforms`]: forms on 2-jet charts, prolongation, the integration map.
//! * [`circlemaps`]: immersions `S¹ → S¹` with `ω = ℑ[σ]`, `μ` and `τ`.
//! * [`curves`]: regular closed plane curves, same constructions.
//! * [`liecohomology`]: truncated `𝔛(S¹)`, the Gel'fand–Fuks cocycle, and
//!   the least-squares coboundary test.

pub mod circlemaps;
pub mod curves;
pub mod error;
pub mod jetforms;
pub mod liecohomology;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{bracket, CircleVectorField, PeriodicFunction, DEFAULT_RESOLUTION, REGULARITY_FLOOR};

/// Default functional-derivative step on section spaces.
pub const DEFAULT_EPS: f64 = 1e-5;
