use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::chart::{JetChart, JetPoint};
use super::exterior::Multicovector;
use super::field::ProlongedField;

/// Default finite-difference step for exterior derivatives on a chart.
pub const DEFAULT_ETA: f64 = 1e-4;

type CoeffFn = dyn Fn(&[f64]) -> Result<Multicovector> + Send + Sync;
type DomainFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A smooth map between jet charts, used for pullbacks.
pub type ChartMap = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A differential form on a jet chart with callable coefficients.
///
/// An optional domain predicate guards evaluation; forms built from other
/// forms inherit their parents' predicates through evaluation.
#[derive(Clone)]
pub struct ChartForm {
    chart: JetChart,
    degree: usize,
    coeff: Arc<CoeffFn>,
    domain: Option<Arc<DomainFn>>,
}

impl fmt::Debug for ChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartForm")
            .field("chart", &self.chart.labels())
            .field("degree", &self.degree)
            .field("guarded", &self.domain.is_some())
            .finish()
    }
}

/// Central-difference step in chart coordinate `i` at value `x`. The base
/// coordinate is an angle, so its step is not scaled.
fn step(eta: f64, i: usize, x: f64) -> f64 {
    if i == JetChart::BASE {
        eta
    } else {
        eta * x.abs().max(1.0)
    }
}

impl ChartForm {
    pub fn new(
        chart: &JetChart,
        degree: usize,
        coeff: impl Fn(&[f64]) -> Multicovector + Send + Sync + 'static,
    ) -> Self {
        Self::try_new(chart, degree, move |p| Ok(coeff(p)))
    }

    pub fn try_new(
        chart: &JetChart,
        degree: usize,
        coeff: impl Fn(&[f64]) -> Result<Multicovector> + Send + Sync + 'static,
    ) -> Self {
        Self { chart: chart.clone(), degree, coeff: Arc::new(coeff), domain: None }
    }

    /// Restricts evaluation to points satisfying `predicate`.
    pub fn with_domain(mut self, predicate: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Self {
        self.domain = Some(Arc::new(predicate));
        self
    }

    /// A 0-form.
    pub fn function(chart: &JetChart, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        let dim = chart.dim();
        Self::new(chart, 0, move |p| Multicovector::scalar(dim, f(p)))
    }

    /// The coordinate differential `dx_i`.
    pub fn differential(chart: &JetChart, i: usize) -> Self {
        let m = Multicovector::basis(chart.dim(), &[i]);
        Self::new(chart, 1, move |_| m.clone())
    }

    pub fn zero(chart: &JetChart, degree: usize) -> Self {
        let dim = chart.dim();
        Self::new(chart, degree, move |_| Multicovector::zero(dim, degree))
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.domain.as_ref().is_none_or(|d| d(p))
    }

    pub fn eval(&self, p: &JetPoint) -> Result<Multicovector> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        self.eval_at(p.coords())
    }

    /// Evaluates at raw chart coordinates.
    pub fn eval_at(&self, p: &[f64]) -> Result<Multicovector> {
        if !self.contains(p) {
            return Err(Error::OutsideDomain { coords: p.to_vec() });
        }
        (self.coeff)(p)
    }

    /// Value of a 0-form.
    pub fn eval_scalar(&self, p: &[f64]) -> Result<f64> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: self.degree });
        }
        Ok(self.eval_at(p)?.value())
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::try_new(&self.chart, self.degree, move |p| Ok(&a.eval_at(p)? + &b.eval_at(p)?)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let a = self.clone();
        Self::try_new(&self.chart, self.degree, move |p| Ok(a.eval_at(p)?.scale(c)))
    }

    /// Multiplies by a scalar function of the chart point.
    pub fn times(&self, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        let a = self.clone();
        Self::try_new(&self.chart, self.degree, move |p| Ok(a.eval_at(p)?.scale(f(p))))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::try_new(&self.chart, self.degree + other.degree, move |p| {
            Ok(a.eval_at(p)?.wedge(&b.eval_at(p)?))
        }))
    }

    /// `ι_X` of this form.
    pub fn interior(&self, x: &ProlongedField) -> Result<Self> {
        if x.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        if self.degree == 0 {
            return Err(Error::InteriorOfFunction);
        }
        let (a, x) = (self.clone(), x.clone());
        Ok(Self::try_new(&self.chart, self.degree - 1, move |p| {
            Ok(a.eval_at(p)?.interior(&x.at_coords(p)))
        }))
    }

    /// Exterior derivative, with coefficient partials taken by central
    /// differences of relative step `eta` in each chart coordinate.
    pub fn exterior_derivative(&self, eta: f64) -> Self {
        let a = self.clone();
        let dim = self.chart.dim();
        let degree = self.degree + 1;
        Self::try_new(&self.chart, degree, move |p| {
            let mut out = Multicovector::zero(dim, degree);
            if degree > dim {
                return Ok(out);
            }
            let mut q = p.to_vec();
            for j in 0..dim {
                let h = step(eta, j, p[j]);
                q[j] = p[j] + h;
                let plus = a.eval_at(&q)?;
                q[j] = p[j] - h;
                let minus = a.eval_at(&q)?;
                q[j] = p[j];
                let partial = (&plus - &minus).scale(0.5 / h);
                out += &Multicovector::basis(dim, &[j]).wedge(&partial);
            }
            Ok(out)
        })
    }

    /// Lie derivative by Cartan's formula `L_X = ι_X d + d ι_X`.
    pub fn lie_derivative(&self, x: &ProlongedField, eta: f64) -> Result<Self> {
        let first = self.exterior_derivative(eta).interior(x)?;
        if self.degree == 0 {
            return Ok(first);
        }
        first.add(&self.interior(x)?.exterior_derivative(eta))
    }

    /// Pullback by a chart map `F`, with the Jacobian of `F` taken by central
    /// differences of relative step `eta`.
    pub fn pullback(&self, map: ChartMap, eta: f64) -> Self {
        let a = self.clone();
        let dim = self.chart.dim();
        let degree = self.degree;
        Self::try_new(&self.chart, degree, move |p| {
            let image = map(p);
            let value = a.eval_at(&image)?;
            let mut q = p.to_vec();
            let columns: Vec<Vec<f64>> = (0..dim)
                .map(|i| {
                    let h = step(eta, i, p[i]);
                    q[i] = p[i] + h;
                    let plus = map(&q);
                    q[i] = p[i] - h;
                    let minus = map(&q);
                    q[i] = p[i];
                    plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
                })
                .collect();
            let mut out = Multicovector::zero(dim, degree);
            for (indices, _) in out.clone().terms() {
                let vectors: Vec<&[f64]> = indices.iter().map(|&i| columns[i].as_slice()).collect();
                out.set_coeff(&indices, value.evaluate(&vectors));
            }
            Ok(out)
        })
    }
}

pub fn wedge(a: &ChartForm, b: &ChartForm) -> Result<ChartForm> {
    a.wedge(b)
}

pub fn interior(x: &ProlongedField, a: &ChartForm) -> Result<ChartForm> {
    a.interior(x)
}

pub fn dform(a: &ChartForm, eta: f64) -> ChartForm {
    a.exterior_derivative(eta)
}

pub fn lie_derivative(x: &ProlongedField, a: &ChartForm, eta: f64) -> Result<ChartForm> {
    a.lie_derivative(x, eta)
}

/// `L_X F` for a function `F`, as the central difference of `F` along `X`.
pub fn lie_derivative_function(x: &ProlongedField, f: &ChartForm, eta: f64) -> Result<ChartForm> {
    if f.degree() != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: f.degree() });
    }
    if x.chart() != f.chart() {
        return Err(Error::ChartMismatch);
    }
    let (x, f) = (x.clone(), f.clone());
    let chart = f.chart().clone();
    let dim = chart.dim();
    Ok(ChartForm::try_new(&chart, 0, move |p| {
        let v = x.at_coords(p);
        let h = eta * p.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let shifted = |s: f64| -> Vec<f64> { p.iter().zip(&v).map(|(c, vi)| c + s * vi).collect() };
        let plus = f.eval_scalar(&shifted(h))?;
        let minus = f.eval_scalar(&shifted(-h))?;
        Ok(Multicovector::scalar(dim, (plus - minus) / (2.0 * h)))
    }))
}

/// Largest coefficient magnitude of `a - b` at `p`.
pub fn residual_at(a: &ChartForm, b: &ChartForm, p: &[f64]) -> Result<f64> {
    Ok((&a.eval_at(p)? - &b.eval_at(p)?).max_abs())
}
