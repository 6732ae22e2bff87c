//! Pointwise exterior calculus on second-order jet charts over the circle,
//! prolongation of projectable vector fields, and the integration map that
//! turns forms on the jet chart into forms on the space of sections.
//!
//! Exterior derivatives and Lie derivatives are numeric (central
//! differences on the chart). Prolongation is exact given exact derivatives
//! of the field coefficients.

mod chart;
mod exterior;
mod field;
mod form;
mod integration;
mod section;

pub use chart::{JetChart, JetPoint};
pub use exterior::{Multicovector, MAX_DIM};
pub use field::{prolong2, prolong_base, prolong_vertical, CoefficientJet, ProlongedField, VerticalCoefficient};
pub use form::{dform, interior, lie_derivative, lie_derivative_function, residual_at, wedge, ChartForm, ChartMap, DEFAULT_ETA};
pub use integration::{
    directional_derivative, im_eval, im_on_directions, verify_im_diffeomorphism, verify_im_naturality,
    NaturalityProbe, NaturalityReport,
};
pub use section::{induced_vertical_variation, BaseDiffeomorphism, FiberLift, Section2Jet};
