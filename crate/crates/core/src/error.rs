use thiserror::Error;

/// Errors raised by the calculus engine and the example constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("resolution must be even and at least 8, got {0}")]
    InvalidResolution(usize),

    #[error("resolution mismatch: {left} vs {right}")]
    ResolutionMismatch { left: usize, right: usize },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("divisor sample {value:e} at index {index} is below the regularity threshold")]
    NearZeroDivisor { index: usize, value: f64 },

    #[error("invalid jet chart: {0}")]
    InvalidChart(String),

    #[error("chart mismatch")]
    ChartMismatch,

    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("cannot contract a vector field into a function")]
    InteriorOfFunction,

    #[error("point {coords:?} lies outside the form's domain")]
    OutsideDomain { coords: Vec<f64> },

    #[error("jet of the section leaves the form's domain at sample {index}")]
    SectionOutsideDomain { index: usize },

    #[error("map is not an immersion: |u'| = {value:e} at sample {index}")]
    NotImmersive { index: usize, value: f64 },

    #[error("curve is not regular: speed {value:e} at sample {index}")]
    NotRegular { index: usize, value: f64 },

    #[error("winding number must be nonzero")]
    ZeroWinding,

    #[error("perturbation of size {eps:e} leaves the admissible domain")]
    PerturbationExitsDomain { eps: f64 },

    #[error("diffeomorphism perturbation must satisfy q' > -1 everywhere")]
    NotOrientationPreserving,

    #[error("invalid truncated basis: {0}")]
    InvalidBasis(String),

    #[error("cochain bases differ")]
    BasisMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
