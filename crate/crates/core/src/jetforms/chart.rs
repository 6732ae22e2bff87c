use std::sync::Arc;

use crate::error::{Error, Result};

use super::exterior::MAX_DIM;

/// A second-order jet chart over the circle with `m` fiber coordinates,
/// laid out as `(t, u^1..u^m, u̇^1..u̇^m, ü^1..ü^m)`.
#[derive(Debug, Clone)]
pub struct JetChart(Arc<ChartInner>);

#[derive(Debug)]
struct ChartInner {
    labels: Vec<String>,
    fibers: usize,
}

impl PartialEq for JetChart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl JetChart {
    pub fn new(labels: &[&str]) -> Result<Self> {
        let dim = labels.len();
        if dim < 4 || !(dim - 1).is_multiple_of(3) {
            return Err(Error::InvalidChart(format!(
                "expected one base coordinate and three blocks of fiber coordinates, got {dim} labels"
            )));
        }
        if dim > MAX_DIM {
            return Err(Error::InvalidChart(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::InvalidChart(format!("duplicate label {a:?}")));
            }
        }
        Ok(Self(Arc::new(ChartInner {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            fibers: (dim - 1) / 3,
        })))
    }

    /// `(t, u, u̇, ü)` for maps into the circle.
    pub fn circle_maps() -> Self {
        Self::new(&["t", "u", "u_t", "u_tt"]).expect("valid chart")
    }

    /// `(t, x, y, ẋ, ẏ, ẍ, ÿ)` for plane curves.
    pub fn plane_curves() -> Self {
        Self::new(&["t", "x", "y", "x_t", "y_t", "x_tt", "y_tt"]).expect("valid chart")
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn fibers(&self) -> usize {
        self.0.fibers
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub const BASE: usize = 0;

    pub fn fiber(&self, a: usize) -> usize {
        1 + a
    }

    pub fn first(&self, a: usize) -> usize {
        1 + self.0.fibers + a
    }

    pub fn second(&self, a: usize) -> usize {
        1 + 2 * self.0.fibers + a
    }
}

/// A point of a jet chart.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint {
    chart: JetChart,
    coords: Vec<f64>,
}

impl JetPoint {
    pub fn new(chart: &JetChart, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != chart.dim() {
            return Err(Error::InvalidChart(format!(
                "point has {} coordinates, chart has {}",
                coords.len(),
                chart.dim()
            )));
        }
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { chart: chart.clone(), coords })
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}
