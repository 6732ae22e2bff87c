//! Calculus for real periodic functions on the circle `R / 2πZ`.
//!
//! Functions are stored as `N` uniform samples at `t_j = 2πj/N`. Derivatives
//! are spectral (exact for band-limited inputs below the Nyquist mode), the
//! integral is the uniform rule (exact for modes `|n| < N`), and off-grid
//! evaluation goes through [`TrigSeries`], the trigonometric interpolant.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Default number of samples per computation.
pub const DEFAULT_RESOLUTION: usize = 256;

/// Magnitude below which a divisor, speed or `|u'|` counts as vanishing.
pub const REGULARITY_FLOOR: f64 = 1e-8;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward(samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(&mut buf));
    buf
}

fn inverse_real(mut spectrum: Vec<Complex64>) -> Vec<f64> {
    let n = spectrum.len();
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n).process(&mut spectrum));
    let scale = 1.0 / n as f64;
    spectrum.into_iter().map(|c| c.re * scale).collect()
}

/// Signed frequency of FFT bin `k`, or `None` for the Nyquist bin.
fn frequency(k: usize, n: usize) -> Option<f64> {
    match k.cmp(&(n / 2)) {
        std::cmp::Ordering::Less => Some(k as f64),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(k as f64 - n as f64),
    }
}

/// Grid point `t_j = 2πj/N`.
pub fn grid_point(j: usize, n: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::InvalidResolution(n));
    }
    Ok(())
}

/// A real function on the circle, sampled on the uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    samples: Vec<f64>,
}

/// Sample-wise binary operations for [`pointwise`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointwiseOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Multiplies the first operand by a constant; the second operand is ignored.
    Scale(f64),
}

impl PeriodicFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        check_resolution(samples.len())?;
        if let Some(index) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { samples })
    }

    /// Samples `f` on the grid of `n` points.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_resolution(n)?;
        Self::new((0..n).map(|j| f(grid_point(j, n))).collect())
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    /// `c0 + Σ (a_n cos nt + b_n sin nt)` with `cos_coeffs[n-1] = a_n`, `sin_coeffs[n-1] = b_n`.
    pub fn from_fourier(n: usize, c0: f64, cos_coeffs: &[f64], sin_coeffs: &[f64]) -> Result<Self> {
        Self::from_fn(n, |t| {
            let mut acc = c0;
            for (k, a) in cos_coeffs.iter().enumerate() {
                acc += a * ((k + 1) as f64 * t).cos();
            }
            for (k, b) in sin_coeffs.iter().enumerate() {
                acc += b * ((k + 1) as f64 * t).sin();
            }
            acc
        })
    }

    pub fn resolution(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.resolution();
        (0..n).map(move |j| grid_point(j, n))
    }

    pub fn derivative(&self) -> Self {
        self.derivative_n(1)
    }

    /// Spectral derivative of the given order. The Nyquist mode is discarded.
    pub fn derivative_n(&self, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let n = self.resolution();
        let mut spectrum = forward(&self.samples);
        for (k, c) in spectrum.iter_mut().enumerate() {
            *c = match frequency(k, n) {
                Some(freq) => *c * Complex64::new(0.0, freq).powu(order),
                None => Complex64::new(0.0, 0.0),
            };
        }
        Self { samples: inverse_real(spectrum) }
    }

    /// `(2π/N) Σ f(t_j)`.
    pub fn integrate(&self) -> f64 {
        2.0 * PI * self.samples.iter().sum::<f64>() / self.resolution() as f64
    }

    /// Mean value `(1/2π) ∫ f dt`.
    pub fn mean(&self) -> f64 {
        self.integrate() / (2.0 * PI)
    }

    /// `(1/π) ∫ f cos(nt) dt` for `n ≥ 1`.
    pub fn cos_coefficient(&self, n: usize) -> f64 {
        let m = self.resolution();
        let s: f64 = self
            .samples
            .iter()
            .enumerate()
            .map(|(j, x)| x * (n as f64 * grid_point(j, m)).cos())
            .sum();
        2.0 * s / m as f64
    }

    /// `(1/π) ∫ f sin(nt) dt` for `n ≥ 1`.
    pub fn sin_coefficient(&self, n: usize) -> f64 {
        let m = self.resolution();
        let s: f64 = self
            .samples
            .iter()
            .enumerate()
            .map(|(j, x)| x * (n as f64 * grid_point(j, m)).sin())
            .sum();
        2.0 * s / m as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.samples.iter().map(|&x| f(x)).collect())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        same_resolution(self, other)?;
        Ok(Self {
            samples: self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { samples: self.samples.iter().map(|x| c * x).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Sample-wise quotient; fails if any divisor sample is below [`REGULARITY_FLOOR`].
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        same_resolution(self, other)?;
        if let Some((index, &value)) =
            other.samples.iter().enumerate().find(|(_, v)| v.abs() < REGULARITY_FLOOR)
        {
            return Err(Error::NearZeroDivisor { index, value });
        }
        self.zip_with(other, |a, b| a / b)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }

    pub fn min(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Arithmetic on same-resolution functions. Panics on resolution mismatch;
/// use the `try_*` methods where the resolutions are not known to agree.
impl Add for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn add(self, rhs: Self) -> PeriodicFunction {
        self.try_add(rhs).expect("resolution mismatch")
    }
}

impl Sub for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn sub(self, rhs: Self) -> PeriodicFunction {
        self.try_sub(rhs).expect("resolution mismatch")
    }
}

impl Mul for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn mul(self, rhs: Self) -> PeriodicFunction {
        self.try_mul(rhs).expect("resolution mismatch")
    }
}

impl Neg for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn neg(self) -> PeriodicFunction {
        self.scale(-1.0)
    }
}

pub fn same_resolution(a: &PeriodicFunction, b: &PeriodicFunction) -> Result<()> {
    if a.resolution() != b.resolution() {
        return Err(Error::ResolutionMismatch { left: a.resolution(), right: b.resolution() });
    }
    Ok(())
}

pub fn derivative(f: &PeriodicFunction) -> PeriodicFunction {
    f.derivative()
}

pub fn integrate(f: &PeriodicFunction) -> f64 {
    f.integrate()
}

pub fn pointwise(f: &PeriodicFunction, g: &PeriodicFunction, op: PointwiseOp) -> Result<PeriodicFunction> {
    match op {
        PointwiseOp::Add => f.try_add(g),
        PointwiseOp::Sub => f.try_sub(g),
        PointwiseOp::Mul => f.try_mul(g),
        PointwiseOp::Div => f.try_div(g),
        PointwiseOp::Scale(c) => Ok(f.scale(c)),
    }
}

/// A vector field `f(t) d/dt` on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleVectorField {
    coeff: PeriodicFunction,
}

impl CircleVectorField {
    pub fn new(coeff: PeriodicFunction) -> Self {
        Self { coeff }
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Ok(Self::new(PeriodicFunction::from_fn(n, f)?))
    }

    pub fn coeff(&self) -> &PeriodicFunction {
        &self.coeff
    }

    pub fn resolution(&self) -> usize {
        self.coeff.resolution()
    }

    /// `a·X + b·Y`.
    pub fn combine(a: f64, x: &Self, b: f64, y: &Self) -> Result<Self> {
        Ok(Self::new(x.coeff.scale(a).try_add(&y.coeff.scale(b))?))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeff.scale(c))
    }
}

impl From<PeriodicFunction> for CircleVectorField {
    fn from(coeff: PeriodicFunction) -> Self {
        Self::new(coeff)
    }
}

/// Lie bracket `[f d/dt, g d/dt] = (f g' - g f') d/dt`.
pub fn bracket(x: &CircleVectorField, y: &CircleVectorField) -> Result<CircleVectorField> {
    let (f, g) = (&x.coeff, &y.coeff);
    same_resolution(f, g)?;
    Ok(CircleVectorField::new(&(f * &g.derivative()) - &(g * &f.derivative())))
}

/// The trigonometric interpolant of a sampled function, for evaluation (and
/// differentiation) at arbitrary `t`.
///
/// Consistent with [`PeriodicFunction::derivative_n`]: the Nyquist mode is
/// dropped, so at grid points both agree to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    mean: f64,
    // (n, a_n, b_n) for a_n cos nt + b_n sin nt; negligible modes are omitted
    modes: Vec<(f64, f64, f64)>,
}

impl TrigSeries {
    pub fn new(f: &PeriodicFunction) -> Self {
        let n = f.resolution();
        let spectrum = forward(f.samples());
        let scale = 1.0 / n as f64;
        let mean = spectrum[0].re * scale;
        let raw: Vec<(f64, f64, f64)> = (1..n / 2)
            .map(|k| {
                let c = spectrum[k] * scale;
                (k as f64, 2.0 * c.re, -2.0 * c.im)
            })
            .collect();
        let largest = raw.iter().fold(mean.abs(), |m, &(_, a, b)| m.max(a.abs()).max(b.abs()));
        let cutoff = f64::EPSILON * largest * n as f64;
        let modes = raw.into_iter().filter(|&(_, a, b)| a.abs().max(b.abs()) > cutoff).collect();
        Self { mean, modes }
    }

    pub fn zero() -> Self {
        Self { mean: 0.0, modes: Vec::new() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_derivative(t, 0)
    }

    /// The `order`-th derivative at `t`.
    pub fn eval_derivative(&self, t: f64, order: u32) -> f64 {
        let mut acc = if order == 0 { self.mean } else { 0.0 };
        for &(n, a, b) in &self.modes {
            let (s, c) = (n * t).sin_cos();
            let w = n.powi(order as i32);
            // d^r/dt^r of (a cos + b sin) cycles through (c, -s, -c, s).
            let v = match order % 4 {
                0 => a * c + b * s,
                1 => -a * s + b * c,
                2 => -a * c - b * s,
                _ => a * s - b * c,
            };
            acc += w * v;
        }
        acc
    }

    /// Value and first two derivatives at `t`.
    pub fn jet2(&self, t: f64) -> [f64; 3] {
        let mut out = [self.mean, 0.0, 0.0];
        for &(n, a, b) in &self.modes {
            let (s, c) = (n * t).sin_cos();
            out[0] += a * c + b * s;
            out[1] += n * (-a * s + b * c);
            out[2] += n * n * (-a * c - b * s);
        }
        out
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }
}
