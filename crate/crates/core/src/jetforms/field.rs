use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{PeriodicFunction, TrigSeries};

use super::chart::{JetChart, JetPoint};

type ComponentFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A vector field on a jet chart.
#[derive(Clone)]
pub struct ProlongedField {
    chart: JetChart,
    components: Arc<ComponentFn>,
}

impl fmt::Debug for ProlongedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProlongedField").field("chart", &self.chart.labels()).finish()
    }
}

impl ProlongedField {
    pub fn new(chart: &JetChart, components: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        Self { chart: chart.clone(), components: Arc::new(components) }
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn at(&self, p: &JetPoint) -> Result<Vec<f64>> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(self.at_coords(p.coords()))
    }

    pub fn at_coords(&self, p: &[f64]) -> Vec<f64> {
        (self.components)(p)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::new(&self.chart, move |p| {
            a.at_coords(p).iter().zip(b.at_coords(p)).map(|(x, y)| x + y).collect()
        }))
    }

    pub fn scale(&self, c: f64) -> Self {
        let a = self.clone();
        Self::new(&self.chart, move |p| a.at_coords(p).iter().map(|x| c * x).collect())
    }

    /// Jacobi–Lie bracket `[A, B] = D_A B - D_B A`, with both directional
    /// derivatives taken by central differences of step `eta`.
    pub fn lie_bracket(&self, other: &Self, eta: f64) -> Result<Self> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::new(&self.chart, move |p| {
            let va = a.at_coords(p);
            let vb = b.at_coords(p);
            let along = |field: &ProlongedField, dir: &[f64]| -> Vec<f64> {
                let shift = |s: f64| -> Vec<f64> { p.iter().zip(dir).map(|(x, d)| x + s * d).collect() };
                let plus = field.at_coords(&shift(eta));
                let minus = field.at_coords(&shift(-eta));
                plus.iter().zip(&minus).map(|(x, y)| (x - y) / (2.0 * eta)).collect()
            };
            let db = along(&b, &va);
            let da = along(&a, &vb);
            db.iter().zip(&da).map(|(x, y)| x - y).collect()
        }))
    }
}

/// Value, gradient and Hessian of a fiber coefficient `φ(t, u^1..u^m)`,
/// with variables ordered `(t, u^1, …, u^m)` and the Hessian row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientJet {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<f64>,
}

/// Coefficient as a function of the base point and the fiber values.
type PointFn = Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;

/// The fiber component `φ^a` of a projectable vector field
/// `f(t) ∂_t + Σ φ^a(t, u) ∂_{u^a}`.
#[derive(Clone)]
pub enum VerticalCoefficient {
    Zero,
    /// A function of the base point only, differentiated exactly.
    OfBase(TrigSeries),
    /// An arbitrary smooth function; its partials are central differences.
    Custom(PointFn),
}

impl fmt::Debug for VerticalCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::OfBase(s) => f.debug_tuple("OfBase").field(s).finish(),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

const CUSTOM_STEP: f64 = 1e-4;

impl VerticalCoefficient {
    pub fn of_base(h: &PeriodicFunction) -> Self {
        Self::OfBase(TrigSeries::new(h))
    }

    pub fn custom(f: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(f))
    }

    pub fn jet(&self, t: f64, fibers: &[f64]) -> CoefficientJet {
        let n = 1 + fibers.len();
        match self {
            Self::Zero => CoefficientJet { value: 0.0, gradient: vec![0.0; n], hessian: vec![0.0; n * n] },
            Self::OfBase(series) => {
                let [v, d1, d2] = series.jet2(t);
                let mut gradient = vec![0.0; n];
                let mut hessian = vec![0.0; n * n];
                gradient[0] = d1;
                hessian[0] = d2;
                CoefficientJet { value: v, gradient, hessian }
            }
            Self::Custom(f) => {
                let mut x: Vec<f64> = std::iter::once(t).chain(fibers.iter().copied()).collect();
                let eval = |x: &[f64]| f(x[0], &x[1..]);
                let value = eval(&x);
                let h = CUSTOM_STEP;
                let mut gradient = vec![0.0; n];
                let mut hessian = vec![0.0; n * n];
                for i in 0..n {
                    let xi = x[i];
                    x[i] = xi + h;
                    let plus = eval(&x);
                    x[i] = xi - h;
                    let minus = eval(&x);
                    x[i] = xi;
                    gradient[i] = (plus - minus) / (2.0 * h);
                    hessian[i * n + i] = (plus - 2.0 * value + minus) / (h * h);
                    for j in 0..i {
                        let xj = x[j];
                        let mut corner = |si: f64, sj: f64| {
                            x[i] = xi + si * h;
                            x[j] = xj + sj * h;
                            let v = eval(&x);
                            x[i] = xi;
                            x[j] = xj;
                            v
                        };
                        let mixed = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0)
                            + corner(-1.0, -1.0))
                            / (4.0 * h * h);
                        hessian[i * n + j] = mixed;
                        hessian[j * n + i] = mixed;
                    }
                }
                CoefficientJet { value, gradient, hessian }
            }
        }
    }
}

/// Second prolongation of `X = f(t) ∂_t + Σ φ^a(t, u) ∂_{u^a}` by the
/// total-derivative recursion
///
/// ```text
/// φ^a_(1) = D_t φ^a - u̇^a f',     φ^a_(2) = D_t φ^a_(1) - ü^a f'
/// ```
///
/// which gives components `(f, φ^a, φ^a_(1), φ^a_(2))`.
pub fn prolong2(
    chart: &JetChart,
    base_coeff: &PeriodicFunction,
    vertical_coeffs: Vec<VerticalCoefficient>,
) -> Result<ProlongedField> {
    let m = chart.fibers();
    if vertical_coeffs.len() != m {
        return Err(Error::InvalidChart(format!(
            "{} vertical coefficients for a chart with {m} fiber coordinates",
            vertical_coeffs.len()
        )));
    }
    let base = TrigSeries::new(base_coeff);
    let dim = chart.dim();
    Ok(ProlongedField::new(chart, move |p| {
        let t = p[0];
        let u = &p[1..1 + m];
        let u1 = &p[1 + m..1 + 2 * m];
        let u2 = &p[1 + 2 * m..1 + 3 * m];
        let [f, df, d2f] = base.jet2(t);
        let n = 1 + m;
        let mut out = vec![0.0; dim];
        out[0] = f;
        for (a, coeff) in vertical_coeffs.iter().enumerate() {
            let jet = coeff.jet(t, u);
            let g = &jet.gradient;
            let hess = |i: usize, j: usize| jet.hessian[i * n + j];
            // D_t φ and D_t D_t φ for φ = φ(t, u)
            let mut dt_phi = g[0];
            let mut dtt_phi = hess(0, 0);
            for b in 0..m {
                dt_phi += u1[b] * g[1 + b];
                dtt_phi += 2.0 * u1[b] * hess(0, 1 + b) + u2[b] * g[1 + b];
                for c in 0..m {
                    dtt_phi += u1[b] * u1[c] * hess(1 + b, 1 + c);
                }
            }
            out[1 + a] = jet.value;
            out[1 + m + a] = dt_phi - u1[a] * df;
            out[1 + 2 * m + a] = dtt_phi - 2.0 * u2[a] * df - u1[a] * d2f;
        }
        out
    }))
}

/// Prolongation of the projectable field `f(t) ∂_t` with no fiber component.
pub fn prolong_base(chart: &JetChart, f: &PeriodicFunction) -> Result<ProlongedField> {
    prolong2(chart, f, vec![VerticalCoefficient::Zero; chart.fibers()])
}

/// Prolongation of the vertical field `Σ h_a(t) ∂_{u^a}`.
pub fn prolong_vertical(chart: &JetChart, directions: &[PeriodicFunction]) -> Result<ProlongedField> {
    let first = directions.first().ok_or_else(|| Error::InvalidChart("no fiber directions".into()))?;
    let zero = PeriodicFunction::zeros(first.resolution())?;
    prolong2(chart, &zero, directions.iter().map(VerticalCoefficient::of_base).collect())
}
