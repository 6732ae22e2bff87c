//! The integration map `ℑ: Ω^{1+k}(J²E) → Ω^k(Γ(E))` over the circle.
//!
//! For a form `a` of degree `1 + k`, a section `s` and vertical tangent
//! vectors `X_1..X_k` with prolongations `X_i^(2)`,
//!
//! ```text
//! ℑ[a]_s(X_1, …, X_k) = ∫ (j²s)^* (ι_{X_k} ⋯ ι_{X_1} a) = ∫ a(X_1, …, X_k, D_t) dt
//! ```
//!
//! where `D_t = (1, u', u'', u''')` is the velocity of the jet curve.

use crate::error::{Error, Result};
use crate::spectral::PeriodicFunction;

use super::field::{prolong_base, prolong_vertical, ProlongedField};
use super::form::ChartForm;
use super::section::{induced_vertical_variation, BaseDiffeomorphism, Section2Jet};

/// Evaluates `ℑ[a]_s(X_1, …, X_k)`; `X_1` is contracted first.
pub fn im_eval(a: &ChartForm, s: &Section2Jet, verticals: &[ProlongedField]) -> Result<f64> {
    let expected = 1 + verticals.len();
    if a.degree() != expected {
        return Err(Error::DegreeMismatch { expected, found: a.degree() });
    }
    if a.chart() != s.chart() || verticals.iter().any(|x| x.chart() != s.chart()) {
        return Err(Error::ChartMismatch);
    }
    let n = s.resolution();
    let mut sum = 0.0;
    for j in 0..n {
        let p = s.jet_coords(j);
        let mut m = a.eval_at(&p).map_err(|e| match e {
            Error::OutsideDomain { .. } => Error::SectionOutsideDomain { index: j },
            other => other,
        })?;
        for x in verticals {
            m = m.interior(&x.at_coords(&p));
        }
        sum += m.interior(&s.velocity(j)).value();
    }
    Ok(2.0 * std::f64::consts::PI * sum / n as f64)
}

/// `ℑ[a]_s` on vertical directions given as one periodic function per fiber.
pub fn im_on_directions(a: &ChartForm, s: &Section2Jet, directions: &[&[PeriodicFunction]]) -> Result<f64> {
    let fields = directions
        .iter()
        .map(|d| prolong_vertical(s.chart(), d))
        .collect::<Result<Vec<_>>>()?;
    im_eval(a, s, &fields)
}

fn sup_norm(direction: &[PeriodicFunction]) -> f64 {
    direction.iter().fold(0.0, |m, h| m.max(h.max_abs()))
}

/// Symmetric-difference derivative of a functional on sections along the
/// constant direction `H`, with step `eps / sup|H|`.
pub fn directional_derivative(
    s: &Section2Jet,
    direction: &[PeriodicFunction],
    eps: f64,
    functional: impl Fn(&Section2Jet) -> Result<f64>,
) -> Result<f64> {
    let sup = sup_norm(direction);
    if sup == 0.0 {
        return Ok(0.0);
    }
    let h = eps / sup;
    let plus = functional(&s.perturbed(direction, h)?)?;
    let minus = functional(&s.perturbed(direction, -h)?)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Fixtures for [`verify_im_naturality`].
#[derive(Debug, Clone, Copy)]
pub struct NaturalityProbe<'a> {
    pub section: &'a Section2Jet,
    /// Coefficient `f` of the base field `X = f d/dt`.
    pub field: &'a PeriodicFunction,
    /// Constant vertical directions; a form of degree `1 + k` needs `k + 1`.
    pub directions: &'a [Vec<PeriodicFunction>],
    /// Functional-derivative step on the section space.
    pub eps: f64,
    /// Finite-difference step on the jet chart.
    pub eta: f64,
}

/// Absolute residuals of the commutation rules of `ℑ` with `d`, `L_X` and `ι_X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalityReport {
    /// `|ℑ[da] - dℑ[a]|`.
    pub exterior_derivative: f64,
    /// `|ℑ[L_{X^(2)} a] - L_{X_Γ} ℑ[a]|`.
    pub lie_derivative: f64,
    /// `|ℑ[ι_{X^(2)} a] - ι_{X_Γ} ℑ[a]|`; absent for 1-forms.
    pub interior: Option<f64>,
}

impl NaturalityReport {
    pub fn max(&self) -> f64 {
        self.exterior_derivative.max(self.lie_derivative).max(self.interior.unwrap_or(0.0))
    }
}

fn without(dirs: &[Vec<PeriodicFunction>], skip: usize) -> Vec<&[PeriodicFunction]> {
    dirs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, d)| d.as_slice()).collect()
}

/// Checks that `ℑ` commutes with the exterior derivative, with Lie
/// derivatives along prolonged base fields and with their contractions.
///
/// The section-space side uses the flat-chart formulas for constant
/// directions, `dθ(H_0..H_k) = Σ (-1)^i D_{H_i} θ(…Ĥ_i…)` and
/// `(L_V θ)(H..) = D_V θ(H..) + Σ θ(…, D_{H_i} V, …)`, with `V = X_Γ(s)`.
pub fn verify_im_naturality(a: &ChartForm, probe: NaturalityProbe<'_>) -> Result<NaturalityReport> {
    let NaturalityProbe { section: s, field: f, directions, eps, eta } = probe;
    let chart = s.chart();
    let k = a.degree().checked_sub(1).ok_or(Error::DegreeMismatch { expected: 1, found: 0 })?;
    if directions.len() < k + 1 {
        return Err(Error::DegreeMismatch { expected: k + 1, found: directions.len() });
    }
    let dirs = &directions[..=k];

    // d
    let da = a.exterior_derivative(eta);
    let all: Vec<&[PeriodicFunction]> = dirs.iter().map(Vec::as_slice).collect();
    let lhs = im_on_directions(&da, s, &all)?;
    let mut rhs = 0.0;
    for (i, h) in dirs.iter().enumerate() {
        let rest = without(dirs, i);
        let d = directional_derivative(s, h, eps, |t| im_on_directions(a, t, &rest))?;
        rhs += if i % 2 == 0 { d } else { -d };
    }
    let exterior_derivative = (lhs - rhs).abs();

    // L_X
    let x = prolong_base(chart, f)?;
    let v = s.induced_vertical(f)?;
    let tail: Vec<&[PeriodicFunction]> = dirs[..k].iter().map(Vec::as_slice).collect();
    let lhs = im_on_directions(&a.lie_derivative(&x, eta)?, s, &tail)?;
    let mut rhs = directional_derivative(s, &v, eps, |t| im_on_directions(a, t, &tail))?;
    for i in 0..k {
        let dv = induced_vertical_variation(f, &dirs[i])?;
        let mut args = tail.clone();
        args[i] = &dv;
        rhs += im_on_directions(a, s, &args)?;
    }
    let lie_derivative = (lhs - rhs).abs();

    // ι_X
    let interior = if k >= 1 {
        let rest: Vec<&[PeriodicFunction]> = dirs[..k - 1].iter().map(Vec::as_slice).collect();
        let lhs = im_on_directions(&a.interior(&x)?, s, &rest)?;
        let mut args = vec![v.as_slice()];
        args.extend(rest);
        Some((lhs - im_on_directions(a, s, &args)?).abs())
    } else {
        None
    };

    Ok(NaturalityReport { exterior_derivative, lie_derivative, interior })
}

/// Naturality of `ℑ` under a base diffeomorphism `φ`:
/// `|ℑ[(φ^(2))^* a]_s(H..) - ℑ[a]_{s∘φ^{-1}}(H∘φ^{-1}, ..)|`.
pub fn verify_im_diffeomorphism(
    a: &ChartForm,
    s: &Section2Jet,
    directions: &[Vec<PeriodicFunction>],
    phi: &BaseDiffeomorphism,
    eta: f64,
) -> Result<f64> {
    let k = a.degree().saturating_sub(1);
    let dirs: Vec<&[PeriodicFunction]> = directions[..k].iter().map(Vec::as_slice).collect();
    let pulled = a.pullback(phi.jet_map(s.chart()), eta);
    let lhs = im_on_directions(&pulled, s, &dirs)?;

    let moved = phi.transport_section(s)?;
    let moved_dirs = directions[..k]
        .iter()
        .map(|d| d.iter().map(|h| phi.transport_function(h)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let moved_refs: Vec<&[PeriodicFunction]> = moved_dirs.iter().map(Vec::as_slice).collect();
    let rhs = im_on_directions(a, &moved, &moved_refs)?;
    Ok((lhs - rhs).abs())
}
