//! Immersions `u: S¹ → S¹` under reparametrization of the source.
//!
//! On the chart `(t, u, u̇, ü)` the invariant closed 3-form
//! `σ = u̇⁻² dt∧du̇∧dü` has primitive `α = u̇⁻¹ dt∧dü`, and
//! `ρ(X) = -f' du̇/u̇ - ι_{X^(2)} α` satisfies `ι_{X^(2)} σ = dρ(X)`.
//! Integrating gives the presymplectic form `ω = ℑ[σ]` on immersions, the
//! moment map `μ(X) = ℑ[ρ(X)]`, and the obstruction cocycle
//! `τ(X, Y) = μ([X, Y]) + L_{Y_𝔄} μ(X)`.
//!
//! Each quantity has a closed-form spectral evaluation and an independent
//! evaluation through [`im_eval`] on the jet chart.

use crate::error::{Error, Result};
use crate::jetforms::{im_eval, prolong_base, prolong_vertical, ChartForm, JetChart, Multicovector, Section2Jet};
use crate::spectral::{bracket, same_resolution, CircleVectorField, PeriodicFunction, TrigSeries, REGULARITY_FLOOR};

/// An immersion of the circle, lifted as `u(t) = d·t + p(t)` with winding
/// number `d ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMap {
    winding: i32,
    section: Section2Jet,
}

impl CircleMap {
    pub fn new(winding: i32, periodic: PeriodicFunction) -> Result<Self> {
        if winding == 0 {
            return Err(Error::ZeroWinding);
        }
        let section = Section2Jet::new(&JetChart::circle_maps(), vec![(winding as f64, periodic)])?;
        let du = section.lifts()[0].first();
        let sign = winding.signum() as f64;
        if let Some((index, &value)) =
            du.samples().iter().enumerate().find(|(_, &v)| sign * v < REGULARITY_FLOOR)
        {
            return Err(Error::NotImmersive { index, value });
        }
        Ok(Self { winding, section })
    }

    pub fn from_fn(n: usize, winding: i32, periodic: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(winding, PeriodicFunction::from_fn(n, periodic)?)
    }

    /// `u(t) = t`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(1, PeriodicFunction::zeros(n)?)
    }

    pub fn winding(&self) -> i32 {
        self.winding
    }

    pub fn periodic(&self) -> &PeriodicFunction {
        self.section.lifts()[0].periodic()
    }

    pub fn resolution(&self) -> usize {
        self.section.resolution()
    }

    pub fn section(&self) -> &Section2Jet {
        &self.section
    }

    /// `u'`.
    pub fn first(&self) -> &PeriodicFunction {
        self.section.lifts()[0].first()
    }

    pub fn second(&self) -> &PeriodicFunction {
        self.section.lifts()[0].second()
    }

    pub fn third(&self) -> &PeriodicFunction {
        self.section.lifts()[0].third()
    }

    /// `u + eps·k`, keeping the winding number.
    pub fn perturbed(&self, k: &VerticalDirection, eps: f64) -> Result<Self> {
        let p = self.periodic().try_add(&k.0.scale(eps))?;
        Self::new(self.winding, p).map_err(|e| match e {
            Error::NotImmersive { .. } => Error::PerturbationExitsDomain { eps },
            other => other,
        })
    }
}

/// A tangent vector `h(t) ∂/∂u` to the space of immersions.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalDirection(pub PeriodicFunction);

impl VerticalDirection {
    pub fn from_fn(n: usize, h: impl Fn(f64) -> f64) -> Result<Self> {
        Ok(Self(PeriodicFunction::from_fn(n, h)?))
    }

    pub fn function(&self) -> &PeriodicFunction {
        &self.0
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.scale(c))
    }
}

const T: usize = 0;
const U1: usize = 2;
const U2: usize = 3;

fn immersive(p: &[f64]) -> bool {
    p[U1].abs() >= REGULARITY_FLOOR
}

/// `σ = u̇⁻² dt∧du̇∧dü`.
pub fn sigma() -> ChartForm {
    let chart = JetChart::circle_maps();
    let dim = chart.dim();
    ChartForm::new(&chart, 3, move |p| Multicovector::basis(dim, &[T, U1, U2]).scale(p[U1].powi(-2)))
        .with_domain(immersive)
}

/// `α = u̇⁻¹ dt∧dü`, a primitive of `σ`.
pub fn alpha() -> ChartForm {
    let chart = JetChart::circle_maps();
    let dim = chart.dim();
    ChartForm::new(&chart, 2, move |p| Multicovector::basis(dim, &[T, U2]).scale(1.0 / p[U1]))
        .with_domain(immersive)
}

/// `ρ(X) = -f' du̇/u̇ - ι_{X^(2)} α`.
pub fn rho(x: &CircleVectorField) -> Result<ChartForm> {
    let chart = JetChart::circle_maps();
    let dim = chart.dim();
    let series = TrigSeries::new(x.coeff());
    let exact_part = ChartForm::new(&chart, 1, move |p| {
        Multicovector::basis(dim, &[U1]).scale(-series.eval_derivative(p[T], 1) / p[U1])
    })
    .with_domain(immersive);
    let x2 = prolong_base(&chart, x.coeff())?;
    exact_part.sub(&alpha().interior(&x2)?)
}

/// `ω_u(H, K) = ∫ u'⁻² (h' k'' - h'' k') dt`, the closed form of `ℑ[σ]`.
pub fn omega(u: &CircleMap, h: &VerticalDirection, k: &VerticalDirection) -> Result<f64> {
    same_resolution(u.first(), &h.0)?;
    same_resolution(&h.0, &k.0)?;
    let (dh, dk) = (h.0.derivative(), k.0.derivative());
    let (d2h, d2k) = (dh.derivative(), dk.derivative());
    let numerator = &(&dh * &d2k) - &(&d2h * &dk);
    let weight = u.first().map(|v| v.powi(-2))?;
    Ok((&weight * &numerator).integrate())
}

/// `ℑ[σ]_u(H, K)` through the integration map.
pub fn omega_via_im(u: &CircleMap, h: &VerticalDirection, k: &VerticalDirection) -> Result<f64> {
    let chart = JetChart::circle_maps();
    let fields = [prolong_vertical(&chart, std::slice::from_ref(&h.0))?, prolong_vertical(&chart, std::slice::from_ref(&k.0))?];
    im_eval(&sigma(), u.section(), &fields)
}

/// `μ(X)_u = -∫ u'⁻¹ (f u''' + 3 f' u'' + f'' u') dt`.
pub fn moment(x: &CircleVectorField, u: &CircleMap) -> Result<f64> {
    let f = x.coeff();
    same_resolution(f, u.first())?;
    let df = f.derivative();
    let d2f = df.derivative();
    let bracketed = &(&(f * u.third()) + &(&df * u.second()).scale(3.0)) + &(&d2f * u.first());
    Ok(-bracketed.try_div(u.first())?.integrate())
}

/// `ℑ[ρ(X)]_u` through the integration map.
pub fn moment_via_rho(x: &CircleVectorField, u: &CircleMap) -> Result<f64> {
    same_resolution(x.coeff(), u.first())?;
    im_eval(&rho(x)?, u.section(), &[])
}

/// The vertical field `-f·u'` induced on immersions by `X = f d/dt`.
pub fn induced_vertical(x: &CircleVectorField, u: &CircleMap) -> Result<VerticalDirection> {
    Ok(VerticalDirection(-&x.coeff().try_mul(u.first())?))
}

/// Symmetric difference of a functional on immersions along `k`.
pub fn derivative_along(
    u: &CircleMap,
    k: &VerticalDirection,
    eps: f64,
    functional: impl Fn(&CircleMap) -> Result<f64>,
) -> Result<f64> {
    let plus = functional(&u.perturbed(k, eps)?)?;
    let minus = functional(&u.perturbed(k, -eps)?)?;
    Ok((plus - minus) / (2.0 * eps))
}

/// Per-probe comparison of `ω_u(X_𝔄, K)` with `D_K μ(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakHamiltonianReport {
    /// `ω_u(X_𝔄, K)` per probe.
    pub contraction: Vec<f64>,
    /// `D_K μ(X)` per probe.
    pub differential: Vec<f64>,
}

impl WeakHamiltonianReport {
    pub fn residuals(&self) -> Vec<f64> {
        self.contraction.iter().zip(&self.differential).map(|(a, b)| (a - b).abs()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().into_iter().fold(0.0, f64::max)
    }
}

/// Checks `ι_{X_𝔄} ω = d(μ(X))` on each probe direction.
pub fn verify_weak_hamiltonian(
    x: &CircleVectorField,
    u: &CircleMap,
    probes: &[VerticalDirection],
    eps: f64,
) -> Result<WeakHamiltonianReport> {
    let v = induced_vertical(x, u)?;
    let mut contraction = Vec::with_capacity(probes.len());
    let mut differential = Vec::with_capacity(probes.len());
    for k in probes {
        contraction.push(omega(u, &v, k)?);
        differential.push(derivative_along(u, k, eps, |w| moment(x, w))?);
    }
    Ok(WeakHamiltonianReport { contraction, differential })
}

/// `τ(X, Y) = μ([X, Y]) + L_{Y_𝔄} μ(X)`, the Lie derivative taken by a
/// symmetric difference of step `eps` along `Y_𝔄 = -g·u'`.
pub fn tau_from_definition(x: &CircleVectorField, y: &CircleVectorField, u: &CircleMap, eps: f64) -> Result<f64> {
    let v = induced_vertical(y, u)?;
    let transported = derivative_along(u, &v, eps, |w| moment(x, w))?;
    Ok(moment(&bracket(x, y)?, u)? + transported)
}

/// `-∫ (f'' g' - f' g'') dt` for `X = f d/dt`, `Y = g d/dt`.
pub fn obstruction_kernel(f: &PeriodicFunction, g: &PeriodicFunction) -> Result<f64> {
    same_resolution(f, g)?;
    let (df, dg) = (f.derivative(), g.derivative());
    let (d2f, d2g) = (df.derivative(), dg.derivative());
    Ok(-(&(&d2f * &dg) - &(&df * &d2g)).integrate())
}

/// The closed form of the obstruction cocycle.
pub fn tau_closed_form(x: &CircleVectorField, y: &CircleVectorField) -> Result<f64> {
    obstruction_kernel(x.coeff(), y.coeff())
}

/// `dω(H, K, L) = D_H ω(K, L) - D_K ω(H, L) + D_L ω(H, K)` for constant probes.
pub fn omega_closedness_residual(
    u: &CircleMap,
    h: &VerticalDirection,
    k: &VerticalDirection,
    l: &VerticalDirection,
    eps: f64,
) -> Result<f64> {
    let a = derivative_along(u, h, eps, |w| omega(w, k, l))?;
    let b = derivative_along(u, k, eps, |w| omega(w, h, l))?;
    let c = derivative_along(u, l, eps, |w| omega(w, h, k))?;
    Ok((a - b + c).abs())
}

/// Two evaluations of `L_{X_𝔄} ω` on constant probes, both expected to vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceResidual {
    /// `D_V ω(H, K) + ω(D_H V, K) + ω(H, D_K V)` with `V = X_𝔄`.
    pub lie_derivative: f64,
    /// `d(ι_{X_𝔄} ω)(H, K)`.
    pub cartan: f64,
}

pub fn omega_invariance_residual(
    x: &CircleVectorField,
    u: &CircleMap,
    h: &VerticalDirection,
    k: &VerticalDirection,
    eps: f64,
) -> Result<InvarianceResidual> {
    let f = x.coeff();
    let v = induced_vertical(x, u)?;
    let dv_h = VerticalDirection(-&f.try_mul(&h.0.derivative())?);
    let dv_k = VerticalDirection(-&f.try_mul(&k.0.derivative())?);
    let lie = derivative_along(u, &v, eps, |w| omega(w, h, k))? + omega(u, &dv_h, k)? + omega(u, h, &dv_k)?;
    let contracted = |w: &CircleMap, probe: &VerticalDirection| omega(w, &induced_vertical(x, w)?, probe);
    let cartan = derivative_along(u, h, eps, |w| contracted(w, k))? - derivative_along(u, k, eps, |w| contracted(w, h))?;
    Ok(InvarianceResidual { lie_derivative: lie.abs(), cartan: cartan.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const N: usize = 128;

    fn field(f: impl Fn(f64) -> f64) -> CircleVectorField {
        CircleVectorField::from_fn(N, f).unwrap()
    }

    fn dir(h: impl Fn(f64) -> f64) -> VerticalDirection {
        VerticalDirection::from_fn(N, h).unwrap()
    }

    fn wobbly() -> CircleMap {
        CircleMap::from_fn(N, 1, |t| 0.3 * t.sin()).unwrap()
    }

    #[test]
    fn rejects_non_immersions() {
        assert_eq!(CircleMap::new(0, PeriodicFunction::zeros(N).unwrap()), Err(Error::ZeroWinding));
        assert!(matches!(CircleMap::from_fn(N, 1, |t| 2.0 * t.sin()), Err(Error::NotImmersive { .. })));
        assert!(CircleMap::from_fn(N, -1, |t| 0.5 * t.cos()).is_ok());
    }

    #[test]
    fn omega_examples() {
        let id = CircleMap::identity(N).unwrap();
        let (h, k) = (dir(f64::cos), dir(f64::sin));
        assert!(omega(&id, &h, &h).unwrap().abs() < 1e-13);
        // h'k'' - h''k' = sin² + cos² = 1
        assert!((omega(&id, &h, &k).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((omega_via_im(&id, &h, &k).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn omega_two_paths_on_wobbly_map() {
        let u = wobbly();
        let (h, k) = (dir(f64::cos), dir(|t| (2.0 * t).sin()));
        let a = omega(&u, &h, &k).unwrap();
        let b = omega_via_im(&u, &h, &k).unwrap();
        assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn omega_on_orientation_reversing_map() {
        let u = CircleMap::identity(N).unwrap();
        let rev = CircleMap::new(-1, PeriodicFunction::zeros(N).unwrap()).unwrap();
        let (h, k) = (dir(f64::cos), dir(f64::sin));
        let v = omega_via_im(&rev, &h, &k).unwrap();
        assert!((v - omega(&u, &h, &k).unwrap()).abs() < 1e-12);
        assert!((omega_via_im(&rev, &h, &k.scale(3.0)).unwrap() - 3.0 * v).abs() < 1e-11);
    }

    #[test]
    fn moment_vanishes_on_identity() {
        let id = CircleMap::identity(N).unwrap();
        for f in [field(f64::cos), field(|t| (3.0 * t).sin() + 0.5), field(|t| t.cos().exp())] {
            assert!(moment(&f, &id).unwrap().abs() < 1e-11);
            assert!(moment_via_rho(&f, &id).unwrap().abs() < 1e-11);
        }
    }

    #[test]
    fn moment_two_paths() {
        let u = wobbly();
        for f in [field(|_| 1.0), field(f64::cos), field(|t| (2.0 * t).sin() - 0.3 * t.cos())] {
            let a = moment(&f, &u).unwrap();
            let b = moment_via_rho(&f, &u).unwrap();
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn induced_vertical_examples() {
        let id = CircleMap::identity(N).unwrap();
        let h = induced_vertical(&field(|_| 1.0), &id).unwrap();
        assert!(h.0.max_abs_diff(&PeriodicFunction::constant(N, -1.0).unwrap()).unwrap() < 1e-13);
        let double = CircleMap::new(2, PeriodicFunction::zeros(N).unwrap()).unwrap();
        let h = induced_vertical(&field(f64::cos), &double).unwrap();
        assert!(h.0.max_abs_diff(&dir(|t| -2.0 * t.cos()).0).unwrap() < 1e-13);
        assert_eq!(induced_vertical(&field(|_| 0.0), &double).unwrap().0.max_abs(), 0.0);
    }

    #[test]
    fn weak_hamiltonian_identity() {
        let u = wobbly();
        let x = field(f64::cos);
        let probes = [dir(|t| (2.0 * t).sin()), induced_vertical(&x, &u).unwrap()];
        let report = verify_weak_hamiltonian(&x, &u, &probes, 1e-5).unwrap();
        assert!(report.max_residual() <= 1e-5, "{report:?}");
        assert!(report.contraction[1].abs() < 1e-12);
    }

    #[test]
    fn tau_definition_matches_closed_form() {
        let (x, y) = (field(f64::cos), field(f64::sin));
        for u in [CircleMap::identity(N).unwrap(), wobbly()] {
            let tau = tau_from_definition(&x, &y, &u, 1e-5).unwrap();
            assert!((tau - 2.0 * PI).abs() <= 1e-5, "{tau}");
            assert!(tau_from_definition(&x, &x, &u, 1e-5).unwrap().abs() <= 1e-6);
        }
        assert!((tau_closed_form(&x, &y).unwrap() - 2.0 * PI).abs() < 1e-12);
        let (c2, c3) = (field(|t| (2.0 * t).cos()), field(|t| (3.0 * t).cos()));
        assert!(tau_closed_form(&c2, &c3).unwrap().abs() < 1e-12);
    }

    #[test]
    fn perturbation_leaving_immersions_is_an_error() {
        let u = CircleMap::identity(N).unwrap();
        let k = dir(f64::sin);
        assert_eq!(u.perturbed(&k, 1.5), Err(Error::PerturbationExitsDomain { eps: 1.5 }));
    }
}
