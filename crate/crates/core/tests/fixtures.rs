use std::f64::consts::PI;

use jetmoment::circlemaps::CircleMap;
use jetmoment::curves::{self, CurveVertical, PlaneCurve};
use jetmoment::jetforms::{residual_at, ChartForm, JetChart};
use jetmoment::liecohomology::{ce_differential, tau_cochain, TauSource, TruncatedBasis};
use jetmoment::CircleVectorField;

const N: usize = 64;

#[test]
fn definitional_tau_cochains_match_closed_form() {
    let basis = TruncatedBasis::new(3, N).unwrap();
    let exact = tau_cochain(&basis, TauSource::ClosedForm).unwrap();
    let u = CircleMap::from_fn(N, 1, |t| 0.3 * t.sin()).unwrap();
    let curve = PlaneCurve::from_fn(N, |t| 2.0 * t.cos(), f64::sin).unwrap();
    for source in [TauSource::CircleMap { u, eps: 1e-5 }, TauSource::PlaneCurve { curve, eps: 1e-5 }] {
        let tau = tau_cochain(&basis, source).unwrap();
        assert!((tau.matrix() - exact.matrix()).amax() <= 5e-5);
        assert!(tau.matrix().diagonal().amax() == 0.0);
        assert!(ce_differential(&tau).unwrap().max_residual <= 1e-4);
    }
}

#[test]
fn plane_curve_sigma_identities() {
    let chart = JetChart::plane_curves();
    let (sigma, alpha) = curves::sigma_alpha_curves();
    let points = [
        [0.1, 0.0, 0.0, 1.0, 0.0, 0.3, -0.2],
        [2.0, 1.0, -1.0, -0.4, 0.9, -0.5, 0.6],
        [4.5, -2.0, 0.5, 1.2, -1.1, 0.8, 0.1],
    ];
    let d_sigma = sigma.exterior_derivative(1e-4);
    let d_alpha = alpha.exterior_derivative(1e-4);
    for p in points {
        assert!(residual_at(&d_alpha, &sigma, &p).unwrap() <= 1e-6);
        assert!(residual_at(&d_sigma, &ChartForm::zero(&chart, 4), &p).unwrap() <= 1e-4);
    }
}

#[test]
fn plane_curve_omega_is_closed() {
    let u = PlaneCurve::from_fn(N, |t| t.cos() + 0.2 * (2.0 * t).cos(), f64::sin).unwrap();
    let h = CurveVertical::from_fn(N, f64::cos, |t| (2.0 * t).sin()).unwrap();
    let k = CurveVertical::from_fn(N, |t| (3.0 * t).sin(), |t| 0.5 * t.cos()).unwrap();
    let l = CurveVertical::from_fn(N, |t| 0.3 * (2.0 * t).cos(), f64::sin).unwrap();
    assert!(curves::omega_curves_closedness_residual(&u, &h, &k, &l, 1e-5).unwrap() <= 1e-4);
}

#[test]
fn plane_curve_weak_hamiltonian_edge_cases() {
    let u = PlaneCurve::unit_circle(N).unwrap();
    let x = CircleVectorField::from_fn(N, f64::cos).unwrap();
    let v = curves::induced_vertical_curves(&x, &u).unwrap();
    let report = curves::verify_weak_hamiltonian_curves(&x, &u, &[v], 1e-5).unwrap();
    assert!(report.contraction[0].abs() < 1e-12);
    assert!(report.max_residual() <= 1e-5);
    let zero = CircleVectorField::from_fn(N, |_| 0.0).unwrap();
    let probe = CurveVertical::from_fn(N, |t| (2.0 * t).sin(), |_| 0.0).unwrap();
    let report = curves::verify_weak_hamiltonian_curves(&zero, &u, &[probe], 1e-5).unwrap();
    assert_eq!(report.contraction[0], 0.0);
    assert!(report.differential[0].abs() < 1e-12);
}

#[test]
fn plane_curve_tau_is_fixture_independent() {
    let (x, y) = (CircleVectorField::from_fn(N, f64::cos).unwrap(), CircleVectorField::from_fn(N, f64::sin).unwrap());
    let fixtures = [
        PlaneCurve::unit_circle(N).unwrap(),
        PlaneCurve::from_fn(N, |t| 2.0 * t.cos(), f64::sin).unwrap(),
        PlaneCurve::from_fn(N, |t| t.cos() + 0.2 * (2.0 * t).cos(), f64::sin).unwrap(),
    ];
    for c in &fixtures {
        assert!((curves::tau_curves_from_definition(&x, &y, c, 1e-5).unwrap() - 2.0 * PI).abs() <= 5e-5);
        assert!(curves::tau_curves_from_definition(&x, &x, c, 1e-5).unwrap().abs() <= 1e-6);
    }
}
