use std::f64::consts::PI;
use std::time::Instant;

use jetmoment::circlemaps::{self, CircleMap, VerticalDirection};
use jetmoment::curves::{self, CurveVertical, PlaneCurve};
use jetmoment::jetforms::{
    lie_derivative_function, prolong_base, prolong_vertical, residual_at, verify_im_diffeomorphism,
    verify_im_naturality, BaseDiffeomorphism, ChartForm, JetChart, Multicovector, NaturalityProbe,
};
use jetmoment::liecohomology::{
    ce_differential, classify, coboundary, coboundary_residual, gf_generator, tau_cochain, OneCochain, TauSource,
    TruncatedBasis,
};
use jetmoment::spectral::TrigSeries;
use jetmoment::{bracket, CircleVectorField, PeriodicFunction, Result};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{RunConfig, Suite};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub suite: Suite,
    pub id: String,
    /// The identity this entry certifies.
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalRow {
    pub n: usize,
    pub value: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologySummary {
    pub modes: usize,
    pub cocycle_residual: f64,
    pub coboundary_residual: f64,
    pub lambda0: f64,
    pub rank: usize,
    pub per_mode: Vec<f64>,
    pub tau_diagonal: Vec<DiagonalRow>,
    /// Absent below two modes, where no verdict is issued.
    pub verdict: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub entries: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologySummary>,
    pub pass: bool,
}

struct Runner<'a> {
    config: &'a RunConfig,
    suite: Suite,
    entries: Vec<Entry>,
}

impl Runner<'_> {
    fn check(&mut self, id: &str, anchor: &str, default_tol: f64, f: impl FnOnce() -> Result<f64>) {
        let id = format!("{}.{id}", self.suite);
        let tolerance = self.config.tolerance(&id, default_tol);
        let start = Instant::now();
        let outcome = f();
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let (residual, error) = match outcome {
            Ok(r) => (r, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        self.entries.push(Entry {
            suite: self.suite,
            id,
            anchor: anchor.to_owned(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            wall_time_ms,
            error,
        });
    }
}

/// Random band-limited function with closed-form derivatives.
#[derive(Debug, Clone)]
struct Trig(Vec<(f64, f64, f64)>);

impl Trig {
    fn random(rng: &mut ChaCha8Rng, modes: usize, amplitude: f64) -> Self {
        Self(
            (0..=modes)
                .map(|n| {
                    let s = amplitude / (1.0 + n as f64);
                    let b = if n == 0 { 0.0 } else { s * rng.random_range(-1.0..1.0) };
                    (n as f64, s * rng.random_range(-1.0..1.0), b)
                })
                .collect(),
        )
    }

    fn jet(&self, t: f64) -> [f64; 3] {
        self.0.iter().fold([0.0; 3], |[v, d1, d2], &(n, a, b)| {
            let (c, s) = ((n * t).cos(), (n * t).sin());
            [v + a * c + b * s, d1 + n * (b * c - a * s), d2 - n * n * (a * c + b * s)]
        })
    }

    fn sample(&self, n: usize) -> Result<PeriodicFunction> {
        PeriodicFunction::from_fn(n, |t| self.jet(t)[0])
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

fn circle_point(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    vec![
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(-3.0..3.0),
        sign * rng.random_range(0.5..2.0),
        rng.random_range(-2.0..2.0),
    ]
}

fn curve_point(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (v, phase) = (rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI));
    vec![
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
        v * phase.cos(),
        v * phase.sin(),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]
}

fn pointwise(a: &ChartForm, b: &ChartForm, points: &[Vec<f64>]) -> Result<f64> {
    max_of(points.iter().map(|p| residual_at(a, b, p)))
}

fn circle_fixtures(n: usize) -> Result<Vec<CircleMap>> {
    Ok(vec![
        CircleMap::identity(n)?,
        CircleMap::from_fn(n, 1, |t| 0.3 * t.sin())?,
        CircleMap::from_fn(n, 2, |t| 0.3 * (3.0 * t).cos())?,
        CircleMap::from_fn(n, -1, |t| 0.25 * (2.0 * t).sin())?,
    ])
}

fn curve_fixtures(n: usize) -> Result<Vec<PlaneCurve>> {
    Ok(vec![
        PlaneCurve::unit_circle(n)?,
        PlaneCurve::from_fn(n, |t| 2.0 * t.cos(), f64::sin)?,
        PlaneCurve::from_fn(n, |t| t.cos() + 0.2 * (2.0 * t).cos(), f64::sin)?,
    ])
}

fn spectral(r: &mut Runner<'_>, rng: &mut ChaCha8Rng) {
    let n = r.config.resolution;
    let f = Trig::random(rng, 3, 1.0);
    r.check("derivative", "spectral derivative of a band-limited function", 1e-10, || {
        let d = f.sample(n)?.derivative();
        let exact = PeriodicFunction::from_fn(n, |t| f.jet(t)[1])?;
        d.max_abs_diff(&exact)
    });
    r.check("quadrature", "integral of exp(cos t) = 2 pi I0(1)", 1e-12, || {
        const BESSEL_I0_AT_1: f64 = 1.266_065_877_752_008_4;
        let g = PeriodicFunction::from_fn(n, |t| t.cos().exp())?;
        Ok((g.integrate() - 2.0 * PI * BESSEL_I0_AT_1).abs())
    });
    r.check("bracket", "[cos t d/dt, sin t d/dt] = d/dt", 1e-12, || {
        let b = bracket(&CircleVectorField::from_fn(n, f64::cos)?, &CircleVectorField::from_fn(n, f64::sin)?)?;
        b.coeff().max_abs_diff(&PeriodicFunction::constant(n, 1.0)?)
    });
}

fn jetforms(r: &mut Runner<'_>, rng: &mut ChaCha8Rng) {
    let (n, eps, eta) = (r.config.resolution, r.config.eps, r.config.eta);
    let f = Trig::random(rng, 3, 1.0);
    let h = Trig::random(rng, 3, 1.0);
    let points: Vec<_> = (0..200).map(|_| circle_point(rng)).collect();
    let circle = JetChart::circle_maps();
    r.check("prolongation", "X^(2) and H^(2) by the total-derivative recursion", 1e-12, || {
        let x2 = prolong_base(&circle, &f.sample(n)?)?;
        let h2 = prolong_vertical(&circle, &[h.sample(n)?])?;
        let mut worst = 0.0f64;
        for p in &points {
            let [f0, f1, f2] = f.jet(p[0]);
            let [h0, h1, h2v] = h.jet(p[0]);
            let pairs = x2
                .at_coords(p)
                .into_iter()
                .zip([f0, 0.0, -f1 * p[2], -(f2 * p[2] + 2.0 * f1 * p[3])])
                .chain(h2.at_coords(p).into_iter().zip([0.0, h0, h1, h2v]));
            for (a, b) in pairs {
                worst = worst.max((a - b).abs() / b.abs().max(1.0));
            }
        }
        Ok(worst)
    });
    let (sigma, alpha) = (circlemaps::sigma(), circlemaps::alpha());
    r.check("d_alpha", "d alpha = sigma", 1e-6, || pointwise(&alpha.exterior_derivative(eta), &sigma, &points));
    r.check("d_sigma", "d sigma = 0", 1e-6, || {
        pointwise(&sigma.exterior_derivative(eta), &ChartForm::zero(&circle, 4), &points)
    });
    let field = f.sample(n);
    r.check("lie_sigma", "L_X sigma = 0", 1e-6, || {
        let x2 = prolong_base(&circle, field.as_ref().map_err(Clone::clone)?)?;
        pointwise(&sigma.lie_derivative(&x2, eta)?, &ChartForm::zero(&circle, 3), &points)
    });
    r.check("lie_alpha", "L_X alpha = d(-f' du'/u')", 1e-6, || {
        let f = field.as_ref().map_err(Clone::clone)?;
        let x2 = prolong_base(&circle, f)?;
        let df = TrigSeries::new(&f.derivative());
        let dim = circle.dim();
        let potential =
            ChartForm::new(&circle, 1, move |p| Multicovector::basis(dim, &[2]).scale(-df.eval(p[0]) / p[2]));
        pointwise(&alpha.lie_derivative(&x2, eta)?, &potential.exterior_derivative(eta), &points)
    });
    r.check("naturality", "integration map commutes with d, L_X and i_X", 1e-5, || {
        let u = CircleMap::from_fn(n, 1, |t| 0.3 * t.sin())?;
        let dirs = vec![
            vec![PeriodicFunction::from_fn(n, f64::cos)?],
            vec![PeriodicFunction::from_fn(n, |t| (2.0 * t).sin())?],
            vec![PeriodicFunction::from_fn(n, |t| 0.5 * (3.0 * t).cos() + 0.2)?],
        ];
        let f = field.as_ref().map_err(Clone::clone)?;
        let probe = NaturalityProbe { section: u.section(), field: f, directions: &dirs, eps, eta };
        max_of([&sigma, &alpha].map(|a| verify_im_naturality(a, probe).map(|rep| rep.max())))
    });
    r.check("diffeomorphism", "integration map is natural under t -> t + 0.3 sin t", 1e-5, || {
        let u = CircleMap::from_fn(n, 1, |t| 0.3 * t.sin())?;
        let dirs = vec![vec![PeriodicFunction::from_fn(n, f64::cos)?], vec![PeriodicFunction::from_fn(n, |t| (2.0 * t).sin())?]];
        let phi = BaseDiffeomorphism::new(&PeriodicFunction::from_fn(n, |t| 0.3 * t.sin())?)?;
        verify_im_diffeomorphism(&sigma, u.section(), &dirs, &phi, eta)
    });
}

fn random_fields(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Result<Vec<CircleVectorField>> {
    (0..count).map(|_| Ok(CircleVectorField::new(Trig::random(rng, 3, 1.0).sample(n)?))).collect()
}

fn circle_suite(r: &mut Runner<'_>, rng: &mut ChaCha8Rng) {
    let (n, eps) = (r.config.resolution, r.config.eps);
    let fixtures = circle_fixtures(n);
    let fields = random_fields(rng, n, 3);
    let probes: Result<Vec<VerticalDirection>> =
        (0..3).map(|_| Ok(VerticalDirection(Trig::random(rng, 3, 1.0).sample(n)?))).collect();
    let inputs = || -> Result<_> {
        Ok((fixtures.clone()?, fields.clone()?, probes.clone()?))
    };
    r.check("omega_two_paths", "closed-form omega = integral of sigma (relative)", 1e-8, || {
        let (us, _, ks) = inputs()?;
        let mut worst = 0.0f64;
        for u in &us {
            for h in &ks {
                for k in &ks {
                    worst = worst.max(relative(circlemaps::omega(u, h, k)?, circlemaps::omega_via_im(u, h, k)?));
                }
            }
        }
        Ok(worst)
    });
    r.check("moment_two_paths", "closed-form moment = integral of rho(X) (relative)", 1e-8, || {
        let (us, xs, _) = inputs()?;
        max_of(us.iter().flat_map(|u| {
            xs.iter().map(move |x| Ok(relative(circlemaps::moment(x, u)?, circlemaps::moment_via_rho(x, u)?)))
        }))
    });
    r.check("weak_hamiltonian", "omega(X_ind, K) = D_K mu(X)", 1e-5, || {
        let (us, xs, ks) = inputs()?;
        max_of(us.iter().flat_map(|u| {
            let ks = &ks;
            xs.iter().map(move |x| Ok(circlemaps::verify_weak_hamiltonian(x, u, ks, eps)?.max_residual()))
        }))
    });
    r.check("tau", "mu([X,Y]) + L_Y mu(X) = -int(f''g' - f'g'')", 5e-5, || {
        let (us, xs, _) = inputs()?;
        let exact = circlemaps::tau_closed_form(&xs[0], &xs[1])?;
        max_of(us.iter().map(|u| Ok((circlemaps::tau_from_definition(&xs[0], &xs[1], u, eps)? - exact).abs())))
    });
    r.check("omega_closed", "d omega = 0 on constant probes", 1e-4, || {
        let (us, _, ks) = inputs()?;
        circlemaps::omega_closedness_residual(&us[1], &ks[0], &ks[1], &ks[2], eps)
    });
}

fn curve_suite(r: &mut Runner<'_>, rng: &mut ChaCha8Rng) {
    let (n, eps, eta) = (r.config.resolution, r.config.eps, r.config.eta);
    let plane = JetChart::plane_curves();
    let points: Vec<_> = (0..200).map(|_| curve_point(rng)).collect();
    let f = Trig::random(rng, 3, 1.0);
    let fields = random_fields(rng, n, 2);
    let probe = Trig::random(rng, 3, 1.0);
    r.check("f1", "L_X v = -f' v", 1e-6, || {
        let x2 = prolong_base(&plane, &f.sample(n)?)?;
        let g = f.clone();
        let rhs = ChartForm::function(&plane, move |p| -g.jet(p[0])[1] * p[3].hypot(p[4]));
        pointwise(&lie_derivative_function(&x2, &curves::speed(), eta)?, &rhs, &points)
    });
    r.check("f2", "L_X v' = -f'' v - 2 f' v'", 1e-6, || {
        let x2 = prolong_base(&plane, &f.sample(n)?)?;
        let g = f.clone();
        let rhs = ChartForm::function(&plane, move |p| {
            let [_, d1, d2] = g.jet(p[0]);
            let v = p[3].hypot(p[4]);
            -d2 * v - 2.0 * d1 * (p[3] * p[5] + p[4] * p[6]) / v
        });
        pointwise(&lie_derivative_function(&x2, &curves::speed_rate(), eta)?, &rhs, &points)
    });
    r.check("lxa", "L_X alpha = -f'' dt ^ dv / v", 1e-6, || {
        let x2 = prolong_base(&plane, &f.sample(n)?)?;
        let g = f.clone();
        let rhs = ChartForm::differential(&plane, 0)
            .wedge(&curves::speed_differential())?
            .times(move |p| -g.jet(p[0])[2] / p[3].hypot(p[4]));
        pointwise(&curves::sigma_alpha_curves().1.lie_derivative(&x2, eta)?, &rhs, &points)
    });
    r.check("omega_circle", "omega((cos t, 0), (0, cos t)) = pi on the unit circle", 1e-10, || {
        let u = PlaneCurve::unit_circle(n)?;
        let h = CurveVertical::from_fn(n, f64::cos, |_| 0.0)?;
        let k = CurveVertical::from_fn(n, |_| 0.0, f64::cos)?;
        Ok((curves::omega_curves(&u, &h, &k)? - PI).abs())
    });
    r.check("moment_two_paths", "integral of rho(X) = expanded pipeline (relative)", 1e-8, || {
        let xs = fields.clone()?;
        let cs = curve_fixtures(n)?;
        max_of(cs.iter().flat_map(|c| {
            xs.iter().map(move |x| Ok(relative(curves::moment_curves(x, c)?, curves::moment_curves_expanded(x, c)?)))
        }))
    });
    r.check("weak_hamiltonian", "omega(X_ind, K) = D_K mu(X)", 1e-5, || {
        let xs = fields.clone()?;
        let k = CurveVertical::new(probe.sample(n)?, PeriodicFunction::from_fn(n, |t| 0.5 * (2.0 * t).sin())?)?;
        let cs = curve_fixtures(n)?;
        max_of(cs.iter().flat_map(|c| {
            let k = k.clone();
            xs.iter().map(move |x| Ok(curves::verify_weak_hamiltonian_curves(x, c, std::slice::from_ref(&k), eps)?.max_residual()))
        }))
    });
    r.check("tau", "mu([X,Y]) + L_Y mu(X) = -int(f''g' - f'g'')", 5e-5, || {
        let xs = fields.clone()?;
        let exact = curves::tau_curves_closed_form(&xs[0], &xs[1])?;
        let cs = curve_fixtures(n)?;
        max_of(cs.iter().map(|c| Ok((curves::tau_curves_from_definition(&xs[0], &xs[1], c, eps)? - exact).abs())))
    });
}

fn cohomology(r: &mut Runner<'_>, rng: &mut ChaCha8Rng) -> Option<CohomologySummary> {
    let (n, m) = (r.config.resolution, r.config.modes);
    let basis = TruncatedBasis::new(m, n).ok()?;
    let tau = tau_cochain(&basis, TauSource::ClosedForm).ok()?;
    r.check("cocycle", "delta tau = 0", 1e-9, || Ok(ce_differential(&tau)?.max_residual));
    r.check("tau_equals_a", "tau = Gel'fand-Fuks generator a", 1e-10, || {
        Ok((tau.matrix() - gf_generator(&basis).matrix()).amax())
    });
    r.check("cubic_profile", "tau(c_n, s_n) = 2 pi n^3 (relative)", 1e-9, || {
        Ok(tau
            .diagonal_profile()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let expected = 2.0 * PI * ((i + 1) as f64).powi(3);
                (v - expected).abs() / expected
            })
            .fold(0.0, f64::max))
    });
    let lambda = DVector::from_fn(basis.dim(), |_, _| rng.random_range(-5.0..5.0));
    r.check("control", "exact coboundary has zero residual", 1e-9, || {
        Ok(coboundary_residual(&coboundary(&OneCochain::new(&basis, lambda.clone())?)?)?.residual)
    });
    if m >= 2 {
        r.check("verdict", "noise floor / coboundary residual (non-coboundary below 1e-3)", 1e-3, || {
            let entry = classify(&tau)?;
            Ok(entry.noise_floor / entry.fit.residual)
        });
    }
    let fit = coboundary_residual(&tau).ok()?;
    let verdict = (m >= 2).then(|| classify(&tau).ok().map(|e| e.verdict.to_string())).flatten();
    Some(CohomologySummary {
        modes: m,
        cocycle_residual: ce_differential(&tau).ok()?.max_residual,
        coboundary_residual: fit.residual,
        lambda0: fit.lambda.vector()[0],
        rank: fit.rank,
        per_mode: fit.per_mode,
        tau_diagonal: diagonal_rows(&tau.diagonal_profile()),
        verdict,
    })
}

pub fn diagonal_rows(values: &[f64]) -> Vec<DiagonalRow> {
    values
        .iter()
        .enumerate()
        .map(|(i, &value)| DiagonalRow { n: i + 1, value, expected: 2.0 * PI * ((i + 1) as f64).powi(3) })
        .collect()
}

/// Runs the selected suites. Each suite draws its probes from a generator
/// seeded by the config seed and the suite, so selections do not interact.
pub fn run(config: &RunConfig) -> Report {
    let mut entries = Vec::new();
    let mut summary = None;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    for suite in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (suite as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut runner = Runner { config, suite, entries: Vec::new() };
        match suite {
            Suite::Spectral => spectral(&mut runner, &mut rng),
            Suite::Jetforms => jetforms(&mut runner, &mut rng),
            Suite::Circlemaps => circle_suite(&mut runner, &mut rng),
            Suite::Curves => curve_suite(&mut runner, &mut rng),
            Suite::Cohomology => summary = cohomology(&mut runner, &mut rng),
        }
        entries.extend(runner.entries);
    }
    let pass = entries.iter().all(|e| e.pass);
    Report { config: config.clone(), entries, cohomology: summary, pass }
}

/// Which cochain a tau table is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableCochain {
    Tau,
    /// `δλ` for a seeded random `λ`; its diagonal is `-n λ(e₀)`.
    Coboundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauTable {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub diagonal: Vec<DiagonalRow>,
}

pub fn tau_table(config: &RunConfig, cochain: TableCochain) -> Result<TauTable> {
    let basis = TruncatedBasis::new(config.modes, config.resolution)?;
    let (c, lambda0) = match cochain {
        TableCochain::Tau => (tau_cochain(&basis, TauSource::ClosedForm)?, None),
        TableCochain::Coboundary => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let lambda = DVector::from_fn(basis.dim(), |_, _| rng.random_range(-5.0..5.0));
            let lambda0 = lambda[0];
            (coboundary(&OneCochain::new(&basis, lambda)?)?, Some(lambda0))
        }
    };
    let m = c.matrix();
    let mut diagonal = diagonal_rows(&c.diagonal_profile());
    if let Some(l0) = lambda0 {
        for row in &mut diagonal {
            row.expected = -(row.n as f64) * l0;
        }
    }
    Ok(TauTable {
        labels: basis.modes().iter().map(ToString::to_string).collect(),
        matrix: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_jet_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Trig::random(&mut rng, 4, 1.0);
        let (t, h) = (0.7, 1e-5);
        let [_, d1, d2] = f.jet(t);
        let [p, ..] = f.jet(t + h);
        let [m, ..] = f.jet(t - h);
        let [c, ..] = f.jet(t);
        assert!((d1 - (p - m) / (2.0 * h)).abs() < 1e-8);
        assert!((d2 - (p - 2.0 * c + m) / (h * h)).abs() < 1e-4);
    }

    #[test]
    fn relative_uses_unit_floor() {
        assert_eq!(relative(1e-3, 0.0), 1e-3);
        assert!((relative(200.0, 202.0) - 2.0 / 202.0).abs() < 1e-15);
    }

    #[test]
    fn failed_computation_is_a_failing_entry() {
        let config = RunConfig::default();
        let mut r = Runner { config: &config, suite: Suite::Spectral, entries: Vec::new() };
        r.check("broken", "always errors", 1.0, || Err(jetmoment::Error::ZeroWinding));
        let e = &r.entries[0];
        assert_eq!(e.id, "spectral.broken");
        assert!(!e.pass && e.residual.is_nan() && e.error.is_some());
    }

    #[test]
    fn duplicate_suites_run_once() {
        let config = RunConfig { suites: vec![Suite::Spectral, Suite::Spectral], ..RunConfig::default() };
        let report = run(&config);
        assert_eq!(report.entries.len(), 3);
        assert!(report.pass && report.cohomology.is_none());
    }

    #[test]
    fn coboundary_table_expects_linear_diagonal() {
        let config = RunConfig { modes: 3, ..RunConfig::default() };
        let table = tau_table(&config, TableCochain::Coboundary).unwrap();
        assert_eq!(table.labels, ["e0", "c1", "s1", "c2", "s2", "c3", "s3"]);
        for row in &table.diagonal {
            assert!((row.value - row.expected).abs() < 1e-9);
        }
    }
}
