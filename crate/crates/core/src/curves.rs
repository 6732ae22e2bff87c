//! Regular closed plane curves `u = (x, y): S¹ → ℝ²` under reparametrization.
//!
//! On the chart `(t, x, y, ẋ, ẏ, ẍ, ÿ)` the speed `v = √(ẋ² + ẏ²)` and its
//! rate `v̇ = v⁻¹(ẋẍ + ẏÿ)` give `σ = v⁻² dt∧dv∧dv̇`, `α = v⁻¹ dt∧dv̇` and
//! `ρ(X) = -f' dv/v - ι_{X^(2)} α`. Here `ω = ℑ[σ]` has no closed form; it
//! is evaluated through [`im_eval`] only.

use crate::circlemaps::obstruction_kernel;
use crate::error::{Error, Result};
use crate::jetforms::{im_eval, prolong_base, prolong_vertical, ChartForm, JetChart, Multicovector, Section2Jet};
use crate::spectral::{bracket, same_resolution, CircleVectorField, PeriodicFunction, TrigSeries, REGULARITY_FLOOR};

const T: usize = 0;
const XD: usize = 3;
const YD: usize = 4;
const XDD: usize = 5;
const YDD: usize = 6;

/// A closed curve with nowhere-vanishing velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    section: Section2Jet,
}

impl PlaneCurve {
    pub fn new(x: PeriodicFunction, y: PeriodicFunction) -> Result<Self> {
        let section = Section2Jet::new(&JetChart::plane_curves(), vec![(0.0, x), (0.0, y)])?;
        let curve = Self { section };
        let v = curve.speed();
        if let Some((index, &value)) = v.samples().iter().enumerate().find(|(_, &s)| s < REGULARITY_FLOOR) {
            return Err(Error::NotRegular { index, value });
        }
        Ok(curve)
    }

    pub fn from_fn(n: usize, x: impl Fn(f64) -> f64, y: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(PeriodicFunction::from_fn(n, x)?, PeriodicFunction::from_fn(n, y)?)
    }

    /// The unit circle `(cos t, sin t)`.
    pub fn unit_circle(n: usize) -> Result<Self> {
        Self::from_fn(n, f64::cos, f64::sin)
    }

    pub fn x(&self) -> &PeriodicFunction {
        self.section.lifts()[0].periodic()
    }

    pub fn y(&self) -> &PeriodicFunction {
        self.section.lifts()[1].periodic()
    }

    pub fn resolution(&self) -> usize {
        self.section.resolution()
    }

    pub fn section(&self) -> &Section2Jet {
        &self.section
    }

    fn speed(&self) -> PeriodicFunction {
        let (dx, dy) = (self.section.lifts()[0].first(), self.section.lifts()[1].first());
        dx.zip_with(dy, f64::hypot).expect("same resolution")
    }

    pub fn perturbed(&self, k: &CurveVertical, eps: f64) -> Result<Self> {
        let x = self.x().try_add(&k.h1.scale(eps))?;
        let y = self.y().try_add(&k.h2.scale(eps))?;
        Self::new(x, y).map_err(|e| match e {
            Error::NotRegular { .. } => Error::PerturbationExitsDomain { eps },
            other => other,
        })
    }

    /// The curve rotated by `angle` about the origin.
    pub fn rotated(&self, angle: f64) -> Result<Self> {
        let (c, s) = (angle.cos(), angle.sin());
        let x = &self.x().scale(c) - &self.y().scale(s);
        let y = &self.x().scale(s) + &self.y().scale(c);
        Self::new(x, y)
    }

    pub fn translated(&self, a: f64, b: f64) -> Result<Self> {
        Self::new(self.x().map(|x| x + a)?, self.y().map(|y| y + b)?)
    }
}

/// A tangent vector `h₁ ∂/∂x + h₂ ∂/∂y` to the space of curves.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveVertical {
    pub h1: PeriodicFunction,
    pub h2: PeriodicFunction,
}

impl CurveVertical {
    pub fn new(h1: PeriodicFunction, h2: PeriodicFunction) -> Result<Self> {
        same_resolution(&h1, &h2)?;
        Ok(Self { h1, h2 })
    }

    pub fn from_fn(n: usize, h1: impl Fn(f64) -> f64, h2: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(PeriodicFunction::from_fn(n, h1)?, PeriodicFunction::from_fn(n, h2)?)
    }

    pub fn rotated(&self, angle: f64) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        Self {
            h1: &self.h1.scale(c) - &self.h2.scale(s),
            h2: &self.h1.scale(s) + &self.h2.scale(c),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { h1: self.h1.scale(c), h2: self.h2.scale(c) }
    }

    fn components(&self) -> [PeriodicFunction; 2] {
        [self.h1.clone(), self.h2.clone()]
    }
}

/// `v` and `v̇` along the curve, from spectral derivatives.
pub fn speed_functions(u: &PlaneCurve) -> (PeriodicFunction, PeriodicFunction) {
    let lifts = u.section().lifts();
    let (dx, dy, ddx, ddy) = (lifts[0].first(), lifts[1].first(), lifts[0].second(), lifts[1].second());
    let v = u.speed();
    let dot = &(dx * ddx) + &(dy * ddy);
    let rate = dot.try_div(&v).expect("regular curve");
    (v, rate)
}

fn speed_at(p: &[f64]) -> f64 {
    p[XD].hypot(p[YD])
}

fn speed_rate_at(p: &[f64]) -> f64 {
    (p[XD] * p[XDD] + p[YD] * p[YDD]) / speed_at(p)
}

fn regular(p: &[f64]) -> bool {
    speed_at(p) >= REGULARITY_FLOOR
}

/// `dv = v⁻¹(ẋ dẋ + ẏ dẏ)` at a chart point.
fn dv_at(dim: usize, p: &[f64]) -> Multicovector {
    let v = speed_at(p);
    let mut m = Multicovector::zero(dim, 1);
    m.set_coeff(&[XD], p[XD] / v);
    m.set_coeff(&[YD], p[YD] / v);
    m
}

/// `dv̇` by the chain rule.
fn dvdot_at(dim: usize, p: &[f64]) -> Multicovector {
    let v = speed_at(p);
    let vd = speed_rate_at(p);
    let mut m = Multicovector::zero(dim, 1);
    m.set_coeff(&[XD], p[XDD] / v - vd * p[XD] / (v * v));
    m.set_coeff(&[YD], p[YDD] / v - vd * p[YD] / (v * v));
    m.set_coeff(&[XDD], p[XD] / v);
    m.set_coeff(&[YDD], p[YD] / v);
    m
}

/// The chart function `v`.
pub fn speed() -> ChartForm {
    ChartForm::function(&JetChart::plane_curves(), speed_at).with_domain(regular)
}

/// The chart function `v̇`.
pub fn speed_rate() -> ChartForm {
    ChartForm::function(&JetChart::plane_curves(), speed_rate_at).with_domain(regular)
}

/// `dv` with closed-form coefficients.
pub fn speed_differential() -> ChartForm {
    let dim = JetChart::plane_curves().dim();
    ChartForm::new(&JetChart::plane_curves(), 1, move |p| dv_at(dim, p)).with_domain(regular)
}

/// `dv̇` with closed-form coefficients.
pub fn speed_rate_differential() -> ChartForm {
    let dim = JetChart::plane_curves().dim();
    ChartForm::new(&JetChart::plane_curves(), 1, move |p| dvdot_at(dim, p)).with_domain(regular)
}

/// `(σ, α) = (v⁻² dt∧dv∧dv̇, v⁻¹ dt∧dv̇)`.
pub fn sigma_alpha_curves() -> (ChartForm, ChartForm) {
    let chart = JetChart::plane_curves();
    let dim = chart.dim();
    let sigma = ChartForm::new(&chart, 3, move |p| {
        let dt = Multicovector::basis(dim, &[T]);
        dt.wedge(&dv_at(dim, p)).wedge(&dvdot_at(dim, p)).scale(speed_at(p).powi(-2))
    })
    .with_domain(regular);
    let alpha = ChartForm::new(&chart, 2, move |p| {
        Multicovector::basis(dim, &[T]).wedge(&dvdot_at(dim, p)).scale(1.0 / speed_at(p))
    })
    .with_domain(regular);
    (sigma, alpha)
}

/// `ρ(X) = -f' dv/v - ι_{X^(2)} α`.
pub fn rho_curves(x: &CircleVectorField) -> Result<ChartForm> {
    let chart = JetChart::plane_curves();
    let dim = chart.dim();
    let series = TrigSeries::new(x.coeff());
    let exact_part = ChartForm::new(&chart, 1, move |p| {
        dv_at(dim, p).scale(-series.eval_derivative(p[T], 1) / speed_at(p))
    })
    .with_domain(regular);
    let x2 = prolong_base(&chart, x.coeff())?;
    exact_part.sub(&sigma_alpha_curves().1.interior(&x2)?)
}

/// `ℑ[σ]_u(H, K)`.
pub fn omega_curves(u: &PlaneCurve, h: &CurveVertical, k: &CurveVertical) -> Result<f64> {
    let chart = JetChart::plane_curves();
    let fields = [prolong_vertical(&chart, &h.components())?, prolong_vertical(&chart, &k.components())?];
    im_eval(&sigma_alpha_curves().0, u.section(), &fields)
}

/// `μ(X)_u = ℑ[ρ(X)]_u`.
pub fn moment_curves(x: &CircleVectorField, u: &PlaneCurve) -> Result<f64> {
    same_resolution(x.coeff(), u.x())?;
    im_eval(&rho_curves(x)?, u.section(), &[])
}

/// `μ(X)_u` with `ι_{X^(2)} α = (f/v) dv̇ + (f'' + 2f'v̇/v) dt` expanded by
/// (f1), (f2) before pulling back:
/// `∫ [-f' v_t/v - f (v̇)_t/v - f'' - 2f' v̇/v] dt`.
pub fn moment_curves_expanded(x: &CircleVectorField, u: &PlaneCurve) -> Result<f64> {
    let f = x.coeff();
    same_resolution(f, u.x())?;
    let (v, vd) = speed_functions(u);
    let df = f.derivative();
    let d2f = df.derivative();
    let integrand = &(&(&(&(-&df) * &v.derivative()) - &(f * &vd.derivative())).try_div(&v)? - &d2f)
        - &(&df * &vd).try_div(&v)?.scale(2.0);
    Ok(integrand.integrate())
}

/// `V = (-f·x', -f·y')`.
pub fn induced_vertical_curves(x: &CircleVectorField, u: &PlaneCurve) -> Result<CurveVertical> {
    let lifts = u.section().lifts();
    let f = x.coeff();
    CurveVertical::new(-&f.try_mul(lifts[0].first())?, -&f.try_mul(lifts[1].first())?)
}

/// Symmetric difference of a functional on curves along `k`.
pub fn derivative_along_curve(
    u: &PlaneCurve,
    k: &CurveVertical,
    eps: f64,
    functional: impl Fn(&PlaneCurve) -> Result<f64>,
) -> Result<f64> {
    let plus = functional(&u.perturbed(k, eps)?)?;
    let minus = functional(&u.perturbed(k, -eps)?)?;
    Ok((plus - minus) / (2.0 * eps))
}

pub use crate::circlemaps::WeakHamiltonianReport;

/// Checks `ω_u(X_ind, K) = D_K μ(X)` on each probe.
pub fn verify_weak_hamiltonian_curves(
    x: &CircleVectorField,
    u: &PlaneCurve,
    probes: &[CurveVertical],
    eps: f64,
) -> Result<WeakHamiltonianReport> {
    let v = induced_vertical_curves(x, u)?;
    let mut contraction = Vec::with_capacity(probes.len());
    let mut differential = Vec::with_capacity(probes.len());
    for k in probes {
        contraction.push(omega_curves(u, &v, k)?);
        differential.push(derivative_along_curve(u, k, eps, |w| moment_curves(x, w))?);
    }
    Ok(WeakHamiltonianReport { contraction, differential })
}

/// `τ(X, Y) = μ([X, Y]) + L_{Y_ind} μ(X)`.
pub fn tau_curves_from_definition(x: &CircleVectorField, y: &CircleVectorField, u: &PlaneCurve, eps: f64) -> Result<f64> {
    let v = induced_vertical_curves(y, u)?;
    let transported = derivative_along_curve(u, &v, eps, |w| moment_curves(x, w))?;
    Ok(moment_curves(&bracket(x, y)?, u)? + transported)
}

/// Same kernel as [`crate::circlemaps::tau_closed_form`].
pub fn tau_curves_closed_form(x: &CircleVectorField, y: &CircleVectorField) -> Result<f64> {
    obstruction_kernel(x.coeff(), y.coeff())
}

/// `|D_H ω(K, L) - D_K ω(H, L) + D_L ω(H, K)|` for constant probes.
pub fn omega_curves_closedness_residual(
    u: &PlaneCurve,
    h: &CurveVertical,
    k: &CurveVertical,
    l: &CurveVertical,
    eps: f64,
) -> Result<f64> {
    let a = derivative_along_curve(u, h, eps, |w| omega_curves(w, k, l))?;
    let b = derivative_along_curve(u, k, eps, |w| omega_curves(w, h, l))?;
    let c = derivative_along_curve(u, l, eps, |w| omega_curves(w, h, k))?;
    Ok((a - b + c).abs())
}
