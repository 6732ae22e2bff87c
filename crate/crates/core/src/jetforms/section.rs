use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{grid_point, same_resolution, PeriodicFunction, TrigSeries};

use super::chart::{JetChart, JetPoint};
use super::form::ChartMap;

/// One fiber coordinate of a section, `u(t) = w·t + p(t)` with `p` periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberLift {
    winding: f64,
    periodic: PeriodicFunction,
    d1: PeriodicFunction,
    d2: PeriodicFunction,
    d3: PeriodicFunction,
}

impl FiberLift {
    pub fn new(winding: f64, periodic: PeriodicFunction) -> Self {
        let d1p = periodic.derivative();
        let d2 = d1p.derivative();
        let d3 = d2.derivative();
        let d1 = d1p.map(|x| x + winding).expect("finite");
        Self { winding, periodic, d1, d2, d3 }
    }

    pub fn winding(&self) -> f64 {
        self.winding
    }

    pub fn periodic(&self) -> &PeriodicFunction {
        &self.periodic
    }

    pub fn value(&self, j: usize) -> f64 {
        let n = self.periodic.resolution();
        self.winding * grid_point(j, n) + self.periodic.samples()[j]
    }

    /// `u'`, `u''` and `u'''` (all periodic).
    pub fn first(&self) -> &PeriodicFunction {
        &self.d1
    }

    pub fn second(&self) -> &PeriodicFunction {
        &self.d2
    }

    pub fn third(&self) -> &PeriodicFunction {
        &self.d3
    }
}

/// The holonomic jet curve `t ↦ j²s(t)` of a section, sampled on the grid.
/// Derivative slots are spectral derivatives of the fiber functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Section2Jet {
    chart: JetChart,
    lifts: Vec<FiberLift>,
}

impl Section2Jet {
    /// Builds the section from `(winding, periodic part)` per fiber coordinate.
    pub fn new(chart: &JetChart, lifts: Vec<(f64, PeriodicFunction)>) -> Result<Self> {
        if lifts.len() != chart.fibers() {
            return Err(Error::InvalidChart(format!(
                "{} fiber functions for a chart with {} fiber coordinates",
                lifts.len(),
                chart.fibers()
            )));
        }
        for pair in lifts.windows(2) {
            same_resolution(&pair[0].1, &pair[1].1)?;
        }
        Ok(Self {
            chart: chart.clone(),
            lifts: lifts.into_iter().map(|(w, p)| FiberLift::new(w, p)).collect(),
        })
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn lifts(&self) -> &[FiberLift] {
        &self.lifts
    }

    pub fn resolution(&self) -> usize {
        self.lifts[0].periodic.resolution()
    }

    /// Chart coordinates of `j²s(t_j)`.
    pub fn jet_coords(&self, j: usize) -> Vec<f64> {
        let n = self.resolution();
        let mut out = Vec::with_capacity(self.chart.dim());
        out.push(grid_point(j, n));
        out.extend(self.lifts.iter().map(|l| l.value(j)));
        out.extend(self.lifts.iter().map(|l| l.d1.samples()[j]));
        out.extend(self.lifts.iter().map(|l| l.d2.samples()[j]));
        out
    }

    pub fn jet_point(&self, j: usize) -> JetPoint {
        JetPoint::new(&self.chart, self.jet_coords(j)).expect("finite jet")
    }

    /// Velocity of the jet curve at `t_j`: `(1, u', u'', u''')`.
    pub fn velocity(&self, j: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.chart.dim());
        out.push(1.0);
        out.extend(self.lifts.iter().map(|l| l.d1.samples()[j]));
        out.extend(self.lifts.iter().map(|l| l.d2.samples()[j]));
        out.extend(self.lifts.iter().map(|l| l.d3.samples()[j]));
        out
    }

    /// The section `s + eps·H`, where `H` lists one periodic function per fiber.
    pub fn perturbed(&self, direction: &[PeriodicFunction], eps: f64) -> Result<Self> {
        if direction.len() != self.lifts.len() {
            return Err(Error::InvalidChart("direction has the wrong number of fiber components".into()));
        }
        let lifts = self
            .lifts
            .iter()
            .zip(direction)
            .map(|(l, h)| Ok((l.winding, l.periodic.try_add(&h.scale(eps))?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.chart, lifts)
    }

    /// Vertical representative `-f·u'` of the field induced on sections by
    /// `f d/dt` acting on the base.
    pub fn induced_vertical(&self, f: &PeriodicFunction) -> Result<Vec<PeriodicFunction>> {
        self.lifts.iter().map(|l| Ok(-&f.try_mul(&l.d1)?)).collect()
    }
}

/// Derivative of the induced vertical field `s ↦ -f·u'` along the constant
/// direction `H`, i.e. `-f·H'`.
pub fn induced_vertical_variation(f: &PeriodicFunction, direction: &[PeriodicFunction]) -> Result<Vec<PeriodicFunction>> {
    direction.iter().map(|h| Ok(-&f.try_mul(&h.derivative())?)).collect()
}

/// The orientation-preserving diffeomorphism `φ(t) = t + q(t)` of the circle.
#[derive(Debug, Clone)]
pub struct BaseDiffeomorphism {
    q: TrigSeries,
}

impl BaseDiffeomorphism {
    pub fn new(q: &PeriodicFunction) -> Result<Self> {
        if q.derivative().min() <= -1.0 + 1e-8 {
            return Err(Error::NotOrientationPreserving);
        }
        Ok(Self { q: TrigSeries::new(q) })
    }

    pub fn apply(&self, t: f64) -> f64 {
        t + self.q.eval(t)
    }

    /// `φ`, `φ'`, `φ''` at `t`.
    pub fn jet(&self, t: f64) -> [f64; 3] {
        let [q, dq, d2q] = self.q.jet2(t);
        [t + q, 1.0 + dq, d2q]
    }

    /// `φ^{-1}(τ)` by Newton iteration.
    pub fn inverse(&self, tau: f64) -> f64 {
        let mut t = tau;
        for _ in 0..100 {
            let [phi, dphi, _] = self.jet(t);
            let delta = (phi - tau) / dphi;
            t -= delta;
            if delta.abs() <= 1e-15 * t.abs().max(1.0) {
                break;
            }
        }
        t
    }

    /// Action of the prolonged diffeomorphism on second-order jet coordinates:
    /// `(t, u, u̇, ü) ↦ (φ, u, u̇/φ', ü/φ'² - u̇φ''/φ'³)` per fiber.
    pub fn jet_map(&self, chart: &JetChart) -> ChartMap {
        let m = chart.fibers();
        let this = self.clone();
        Arc::new(move |p: &[f64]| {
            let [phi, d1, d2] = this.jet(p[0]);
            let mut out = p.to_vec();
            out[0] = phi;
            for a in 0..m {
                let u1 = p[1 + m + a];
                let u2 = p[1 + 2 * m + a];
                out[1 + m + a] = u1 / d1;
                out[1 + 2 * m + a] = u2 / (d1 * d1) - u1 * d2 / (d1 * d1 * d1);
            }
            out
        })
    }

    /// `f ∘ φ^{-1}` on the grid.
    pub fn transport_function(&self, f: &PeriodicFunction) -> Result<PeriodicFunction> {
        let series = TrigSeries::new(f);
        PeriodicFunction::from_fn(f.resolution(), |tau| series.eval(self.inverse(tau)))
    }

    /// The section `s ∘ φ^{-1}`; windings are preserved.
    pub fn transport_section(&self, s: &Section2Jet) -> Result<Section2Jet> {
        let lifts = s
            .lifts()
            .iter()
            .map(|l| {
                let series = TrigSeries::new(l.periodic());
                let w = l.winding();
                let p = PeriodicFunction::from_fn(s.resolution(), |tau| {
                    let t = self.inverse(tau);
                    w * (t - tau) + series.eval(t)
                })?;
                Ok((w, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Section2Jet::new(s.chart(), lifts)
    }
}
