//! Cochains on a Fourier truncation of `𝔛(S¹)`.
//!
//! The basis is `e₀ = d/dt, c₁ = cos t d/dt, s₁ = sin t d/dt, …, c_M, s_M`.
//! Brackets of basis fields leave the truncation, so each cochain may carry
//! a kernel that evaluates it on arbitrary fields. The coboundary test is a
//! finite least-squares problem over the brackets that stay inside.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::circlemaps::{obstruction_kernel, tau_from_definition, CircleMap};
use crate::curves::{tau_curves_from_definition, PlaneCurve};
use crate::error::{Error, Result};
use crate::spectral::{bracket, CircleVectorField, PeriodicFunction};

/// Relative tolerance for deciding that a bracket stays inside the truncation.
const SPAN_TOLERANCE: f64 = 1e-10;

/// Kind of a basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Constant,
    Cos(usize),
    Sin(usize),
}

impl Mode {
    pub fn frequency(self) -> usize {
        match self {
            Mode::Constant => 0,
            Mode::Cos(n) | Mode::Sin(n) => n,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Constant => write!(f, "e0"),
            Mode::Cos(n) => write!(f, "c{n}"),
            Mode::Sin(n) => write!(f, "s{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBasis {
    max_mode: usize,
    resolution: usize,
    modes: Vec<Mode>,
    elements: Vec<CircleVectorField>,
}

impl TruncatedBasis {
    pub fn new(max_mode: usize, resolution: usize) -> Result<Self> {
        if max_mode == 0 {
            return Err(Error::InvalidBasis("truncation needs at least one mode".into()));
        }
        if resolution < 8 * max_mode {
            return Err(Error::InvalidBasis(format!(
                "resolution {resolution} is below 8 x {max_mode} modes"
            )));
        }
        let mut modes = vec![Mode::Constant];
        for n in 1..=max_mode {
            modes.push(Mode::Cos(n));
            modes.push(Mode::Sin(n));
        }
        let elements = modes
            .iter()
            .map(|&m| {
                CircleVectorField::from_fn(resolution, move |t| match m {
                    Mode::Constant => 1.0,
                    Mode::Cos(n) => (n as f64 * t).cos(),
                    Mode::Sin(n) => (n as f64 * t).sin(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { max_mode, resolution, modes, elements })
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn elements(&self) -> &[CircleVectorField] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CircleVectorField {
        &self.elements[i]
    }

    /// Index of `c_n` (`s_n` is the next one).
    pub fn cos_index(n: usize) -> usize {
        2 * n - 1
    }

    /// Fourier coordinates of a field in this basis; higher modes are dropped.
    pub fn coordinates(&self, x: &CircleVectorField) -> DVector<f64> {
        let f = x.coeff();
        DVector::from_iterator(
            self.dim(),
            self.modes.iter().map(|&m| match m {
                Mode::Constant => f.mean(),
                Mode::Cos(n) => f.cos_coefficient(n),
                Mode::Sin(n) => f.sin_coefficient(n),
            }),
        )
    }

    /// Coordinates of `x` if it lies in the span of the basis.
    pub fn coordinates_within(&self, x: &CircleVectorField) -> Option<DVector<f64>> {
        let c = self.coordinates(x);
        let rebuilt = self
            .elements
            .iter()
            .zip(c.iter())
            .fold(PeriodicFunction::zeros(self.resolution).expect("valid resolution"), |acc, (e, &w)| {
                &acc + &e.coeff().scale(w)
            });
        let scale = x.coeff().max_abs().max(1.0);
        (rebuilt.max_abs_diff(x.coeff()).ok()? <= SPAN_TOLERANCE * scale).then_some(c)
    }
}

/// Bilinear evaluation of a cochain on arbitrary fields.
pub type Kernel = Arc<dyn Fn(&PeriodicFunction, &PeriodicFunction) -> Result<f64> + Send + Sync>;

/// A skew-symmetric bilinear form on the truncation, entry `(i, j) = c(e_i, e_j)`.
#[derive(Clone)]
pub struct TwoCochain {
    basis: TruncatedBasis,
    matrix: DMatrix<f64>,
    kernel: Option<Kernel>,
}

impl fmt::Debug for TwoCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoCochain")
            .field("max_mode", &self.basis.max_mode)
            .field("matrix", &self.matrix)
            .field("kernel", &self.kernel.is_some())
            .finish()
    }
}

impl TwoCochain {
    /// Skew-symmetrizes `matrix` as `(A - Aᵀ)/2`.
    pub fn from_matrix(basis: &TruncatedBasis, matrix: DMatrix<f64>) -> Result<Self> {
        let d = basis.dim();
        if matrix.shape() != (d, d) {
            return Err(Error::BasisMismatch);
        }
        let skew = (&matrix - matrix.transpose()) * 0.5;
        Ok(Self { basis: basis.clone(), matrix: skew, kernel: None })
    }

    /// Assembles the matrix from a kernel, computing only the upper triangle.
    pub fn from_kernel(basis: &TruncatedBasis, kernel: Kernel) -> Result<Self> {
        let d = basis.dim();
        let mut matrix = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i + 1..d {
                let v = kernel(basis.element(i).coeff(), basis.element(j).coeff())?;
                matrix[(i, j)] = v;
                matrix[(j, i)] = -v;
            }
        }
        Ok(Self { basis: basis.clone(), matrix, kernel: Some(kernel) })
    }

    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn has_kernel(&self) -> bool {
        self.kernel.is_some()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// `c(c_n, s_n)` for `n = 1..=M`.
    pub fn diagonal_profile(&self) -> Vec<f64> {
        (1..=self.basis.max_mode)
            .map(|n| {
                let i = TruncatedBasis::cos_index(n);
                self.matrix[(i, i + 1)]
            })
            .collect()
    }

    /// `c(X, Y)`: through the kernel when there is one, otherwise through the
    /// matrix if both fields lie in the truncation.
    pub fn eval(&self, x: &CircleVectorField, y: &CircleVectorField) -> Option<Result<f64>> {
        if let Some(k) = &self.kernel {
            return Some(k(x.coeff(), y.coeff()));
        }
        let a = self.basis.coordinates_within(x)?;
        let b = self.basis.coordinates_within(y)?;
        Some(Ok(a.dot(&(&self.matrix * b))))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let kernel = match (&self.kernel, &other.kernel) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |f: &PeriodicFunction, g: &PeriodicFunction| Ok(a(f, g)? + b(f, g)?)) as Kernel)
            }
            _ => None,
        };
        Ok(Self { basis: self.basis.clone(), matrix: &self.matrix + &other.matrix, kernel })
    }

    /// Frobenius norm of the strict upper triangle.
    pub fn norm(&self) -> f64 {
        upper_norm(&self.matrix)
    }
}

fn upper_norm(m: &DMatrix<f64>) -> f64 {
    let d = m.nrows();
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).map(|ij| m[ij].powi(2)).sum::<f64>().sqrt()
}

/// A linear functional on vector fields, `λ(e_i) = vector[i]`, extended by
/// zero on modes above the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct OneCochain {
    basis: TruncatedBasis,
    vector: DVector<f64>,
}

impl OneCochain {
    pub fn new(basis: &TruncatedBasis, vector: DVector<f64>) -> Result<Self> {
        if vector.len() != basis.dim() {
            return Err(Error::BasisMismatch);
        }
        if let Some(index) = vector.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { basis: basis.clone(), vector })
    }

    pub fn zero(basis: &TruncatedBasis) -> Self {
        Self { basis: basis.clone(), vector: DVector::zeros(basis.dim()) }
    }

    /// The dual basis element `e_i^*`.
    pub fn dual(basis: &TruncatedBasis, i: usize) -> Self {
        let mut v = Self::zero(basis);
        v.vector[i] = 1.0;
        v
    }

    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.vector
    }

    pub fn eval(&self, x: &CircleVectorField) -> f64 {
        self.basis.coordinates(x).dot(&self.vector)
    }
}

/// `a(X, Y) = ∫ (f' g'' - g' f'') dt`.
pub fn gf_kernel(f: &PeriodicFunction, g: &PeriodicFunction) -> Result<f64> {
    let (df, dg) = (f.derivative(), g.derivative());
    let (d2f, d2g) = (df.derivative(), dg.derivative());
    Ok((&(&df * &d2g) - &(&dg * &d2f)).integrate())
}

/// The Gel'fand–Fuks generator `a` on the truncation.
pub fn gf_generator(basis: &TruncatedBasis) -> TwoCochain {
    TwoCochain::from_kernel(basis, Arc::new(gf_kernel)).expect("basis fields share a resolution")
}

/// How to compute `τ` on basis pairs.
#[derive(Debug, Clone)]
pub enum TauSource {
    /// `-∫ (f'' g' - f' g'') dt`.
    ClosedForm,
    /// `μ([X, Y]) + L_{Y_ind} μ(X)` on an immersion of the circle.
    CircleMap { u: CircleMap, eps: f64 },
    /// The same on a regular plane curve.
    PlaneCurve { curve: PlaneCurve, eps: f64 },
}

pub fn tau_cochain(basis: &TruncatedBasis, source: TauSource) -> Result<TwoCochain> {
    let field = |f: &PeriodicFunction| CircleVectorField::new(f.clone());
    let kernel: Kernel = match source {
        TauSource::ClosedForm => Arc::new(obstruction_kernel),
        TauSource::CircleMap { u, eps } => {
            if u.resolution() != basis.resolution() {
                return Err(Error::BasisMismatch);
            }
            Arc::new(move |f, g| tau_from_definition(&field(f), &field(g), &u, eps))
        }
        TauSource::PlaneCurve { curve, eps } => {
            if curve.resolution() != basis.resolution() {
                return Err(Error::BasisMismatch);
            }
            Arc::new(move |f, g| tau_curves_from_definition(&field(f), &field(g), &curve, eps))
        }
    };
    TwoCochain::from_kernel(basis, kernel)
}

/// Outcome of the Chevalley–Eilenberg cocycle check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocycleReport {
    pub max_residual: f64,
    /// Triples `i < j < k` evaluated.
    pub checked: usize,
    /// Triples skipped because a bracket left the truncation and the
    /// cochain has no kernel.
    pub skipped: usize,
}

/// `max |(δc)(e_i, e_j, e_k)|` with
/// `(δc)(X, Y, Z) = -c([X, Y], Z) + c([X, Z], Y) - c([Y, Z], X)`.
///
/// `δc` is alternating, so triples `i < j < k` cover every ordered triple.
pub fn ce_differential(c: &TwoCochain) -> Result<CocycleReport> {
    let e = c.basis.elements();
    let d = e.len();
    let mut brackets = vec![vec![None; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            brackets[i][j] = Some(bracket(&e[i], &e[j])?);
        }
    }
    let mut report = CocycleReport { max_residual: 0.0, checked: 0, skipped: 0 };
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let terms = [
                    c.eval(brackets[i][j].as_ref().expect("filled"), &e[k]),
                    c.eval(brackets[i][k].as_ref().expect("filled"), &e[j]),
                    c.eval(brackets[j][k].as_ref().expect("filled"), &e[i]),
                ];
                match terms {
                    [Some(a), Some(b), Some(cc)] => {
                        let r = (-a? + b? - cc?).abs();
                        report.max_residual = report.max_residual.max(r);
                        report.checked += 1;
                    }
                    _ => report.skipped += 1,
                }
            }
        }
    }
    Ok(report)
}

/// `(δλ)(X, Y) = -λ([X, Y])`.
pub fn coboundary(lambda: &OneCochain) -> Result<TwoCochain> {
    let l = lambda.clone();
    let kernel: Kernel = Arc::new(move |f, g| {
        let xy = bracket(&CircleVectorField::new(f.clone()), &CircleVectorField::new(g.clone()))?;
        Ok(-l.eval(&xy))
    });
    TwoCochain::from_kernel(&lambda.basis, kernel)
}

/// Result of `min_λ ‖τ - δλ‖` over brackets inside the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundaryFit {
    /// Frobenius norm of the strict upper triangle of `τ - δλ*`, restricted
    /// to constrained pairs.
    pub residual: f64,
    pub lambda: OneCochain,
    /// `r_n = τ(c_n, s_n) - (δλ*)(c_n, s_n)`.
    pub per_mode: Vec<f64>,
    /// Numerical rank of the constraint system.
    pub rank: usize,
    /// Number of pairs `(i, j)` whose bracket stays inside the truncation.
    pub constraints: usize,
}

/// Least-squares distance of `τ` from the coboundaries, solved by SVD.
pub fn coboundary_residual(tau: &TwoCochain) -> Result<CoboundaryFit> {
    let basis = &tau.basis;
    let e = basis.elements();
    let d = e.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut diagonal_rows = vec![None; basis.max_mode()];
    for i in 0..d {
        for j in i + 1..d {
            if let Some(coords) = basis.coordinates_within(&bracket(&e[i], &e[j])?) {
                if let (Mode::Cos(n), Mode::Sin(m)) = (basis.modes()[i], basis.modes()[j]) {
                    if n == m {
                        diagonal_rows[n - 1] = Some(rows.len());
                    }
                }
                rows.push(-coords);
                rhs.push(tau.matrix[(i, j)]);
            }
        }
    }
    let a = DMatrix::from_rows(&rows.iter().map(|r| r.transpose()).collect::<Vec<_>>());
    let b = DVector::from_vec(rhs);
    let svd = a.clone().svd(true, true);
    let cutoff = f64::EPSILON * (d.max(rows.len()) as f64) * svd.singular_values.max();
    let solution = svd.solve(&b, cutoff).map_err(|e| Error::InvalidBasis(e.to_string()))?;
    let rank = svd.rank(cutoff);
    let fitted = &a * &solution;
    let misfit = &b - &fitted;
    let per_mode = diagonal_rows.iter().map(|r| r.map_or(f64::NAN, |r| misfit[r])).collect();
    Ok(CoboundaryFit {
        residual: misfit.norm(),
        lambda: OneCochain::new(basis, solution)?,
        per_mode,
        rank,
        constraints: rows.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Coboundary,
    NonCoboundary,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Coboundary => "coboundary",
            Verdict::NonCoboundary => "non-coboundary",
        })
    }
}

/// Separation between the coboundary residual and the noise floor required
/// for a non-coboundary verdict.
pub const VERDICT_SEPARATION: f64 = 1e3;

#[derive(Debug, Clone, PartialEq)]
pub struct NontrivialityEntry {
    pub max_mode: usize,
    pub cocycle_residual: f64,
    pub fit: CoboundaryFit,
    /// `max(cocycle residual, ε_mach·‖τ‖·dim)`.
    pub noise_floor: f64,
    pub verdict: Verdict,
}

/// Classifies a cochain at its truncation level.
pub fn classify(c: &TwoCochain) -> Result<NontrivialityEntry> {
    let max_mode = c.basis.max_mode();
    if max_mode < 2 {
        return Err(Error::InvalidBasis("a verdict needs at least two modes".into()));
    }
    let cocycle_residual = ce_differential(c)?.max_residual;
    let fit = coboundary_residual(c)?;
    let noise_floor = cocycle_residual.max(f64::EPSILON * c.norm() * c.basis.dim() as f64);
    let verdict = if fit.residual > VERDICT_SEPARATION * noise_floor {
        Verdict::NonCoboundary
    } else {
        Verdict::Coboundary
    };
    Ok(NontrivialityEntry { max_mode, cocycle_residual, fit, noise_floor, verdict })
}

/// Closed-form `τ` classified at each truncation level.
pub fn nontriviality_report(max_modes: &[usize], resolution: usize) -> Result<Vec<NontrivialityEntry>> {
    max_modes
        .iter()
        .map(|&m| classify(&tau_cochain(&TruncatedBasis::new(m, resolution)?, TauSource::ClosedForm)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn basis_validation() {
        assert!(TruncatedBasis::new(0, 64).is_err());
        assert!(TruncatedBasis::new(9, 64).is_err());
        let b = TruncatedBasis::new(3, 32).unwrap();
        assert_eq!(b.dim(), 7);
        assert_eq!(b.modes()[TruncatedBasis::cos_index(2)], Mode::Cos(2));
    }

    #[test]
    fn gf_examples() {
        let b = TruncatedBasis::new(4, 64).unwrap();
        let a = gf_generator(&b);
        for n in 1..=4 {
            let i = TruncatedBasis::cos_index(n);
            assert!(a.entry(0, i).abs() < 1e-12);
            assert!((a.entry(i, i + 1) - 2.0 * PI * (n as f64).powi(3)).abs() < 1e-9);
        }
        assert!(a.entry(TruncatedBasis::cos_index(1), TruncatedBasis::cos_index(2) + 1).abs() < 1e-12);
    }

    #[test]
    fn tau_equals_gf_generator() {
        let b = TruncatedBasis::new(4, 64).unwrap();
        let diff = tau_cochain(&b, TauSource::ClosedForm).unwrap().matrix() - gf_generator(&b).matrix();
        assert!(diff.amax() < 1e-10);
    }

    #[test]
    fn coboundary_examples() {
        let b = TruncatedBasis::new(3, 32).unwrap();
        assert_eq!(coboundary(&OneCochain::zero(&b)).unwrap().matrix().amax(), 0.0);
        let c = coboundary(&OneCochain::dual(&b, 0)).unwrap();
        for n in 1..=3 {
            let i = TruncatedBasis::cos_index(n);
            assert!((c.entry(i, i + 1) + n as f64).abs() < 1e-12);
        }
        // [e0, c2] = -2 s2, so δλ(e0, c2) = 2 λ(s2)
        let s2 = TruncatedBasis::cos_index(2) + 1;
        let c = coboundary(&OneCochain::dual(&b, s2)).unwrap();
        assert!((c.entry(0, s2 - 1) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cocycle_checks() {
        let b = TruncatedBasis::new(3, 32).unwrap();
        let tau = tau_cochain(&b, TauSource::ClosedForm).unwrap();
        let r = ce_differential(&tau).unwrap();
        assert!(r.max_residual < 1e-9 && r.skipped == 0 && r.checked == 35);
        let lambda = OneCochain::new(&b, DVector::from_fn(7, |i, _| (i as f64 * 0.37).sin())).unwrap();
        assert!(ce_differential(&coboundary(&lambda).unwrap()).unwrap().max_residual < 1e-9);
        let bare = TwoCochain::from_matrix(&b, tau.matrix().clone()).unwrap();
        assert!(ce_differential(&bare).unwrap().skipped > 0);
    }

    #[test]
    fn residual_at_three_modes() {
        let b = TruncatedBasis::new(3, 64).unwrap();
        let fit = coboundary_residual(&tau_cochain(&b, TauSource::ClosedForm).unwrap()).unwrap();
        assert!((fit.residual - 12.0 * 3f64.sqrt() * PI).abs() < 1e-8 * fit.residual);
        assert!((fit.lambda.vector()[0] + 14.0 * PI).abs() < 1e-8);
        let expected = [-12.0 * PI, -12.0 * PI, 12.0 * PI];
        for (r, e) in fit.per_mode.iter().zip(expected) {
            assert!((r - e).abs() < 1e-8);
        }
    }

    #[test]
    fn verdicts() {
        let report = nontriviality_report(&[2, 4], 64).unwrap();
        assert!(report.iter().all(|e| e.verdict == Verdict::NonCoboundary));
        let b = TruncatedBasis::new(4, 64).unwrap();
        let lambda = OneCochain::new(&b, DVector::from_fn(9, |i, _| 1.0 + i as f64)).unwrap();
        let entry = classify(&coboundary(&lambda).unwrap()).unwrap();
        assert_eq!(entry.verdict, Verdict::Coboundary);
        assert!(entry.fit.residual < 1e-9);
        assert!(nontriviality_report(&[1], 64).is_err());
    }
}
