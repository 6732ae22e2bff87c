//! Alternating multilinear forms on a single tangent space `R^dim`.

use std::ops::{Add, AddAssign, Sub};

/// Maximum chart dimension. Coefficients are stored densely by bitmask.
pub const MAX_DIM: usize = 12;

/// An element of `Λ^k (R^dim)*`, stored as coefficients on `dx_I` indexed by
/// the bitmask of the strictly increasing index tuple `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multicovector {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

fn mask_of(indices: &[usize]) -> Option<usize> {
    let mut mask = 0usize;
    for &i in indices {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
    }
    Some(mask)
}

/// Sign of the permutation sorting `indices` (which must be distinct).
fn sort_sign(indices: &[usize]) -> f64 {
    let mut inversions = 0;
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            if indices[a] > indices[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1.0 } else { -1.0 }
}

impl Multicovector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Self { dim, degree, coeffs: vec![0.0; 1 << dim] }
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut m = Self::zero(dim, 0);
        m.coeffs[0] = value;
        m
    }

    /// `dx_{i_1} ∧ … ∧ dx_{i_k}` for distinct indices in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut m = Self::zero(dim, indices.len());
        if let Some(mask) = mask_of(indices) {
            m.coeffs[mask] = sort_sign(indices);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient on `dx_{i_1} ∧ … ∧ dx_{i_k}`, honouring the order of `indices`.
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        assert_eq!(indices.len(), self.degree);
        match mask_of(indices) {
            Some(mask) => sort_sign(indices) * self.coeffs[mask],
            None => 0.0,
        }
    }

    pub fn set_coeff(&mut self, indices: &[usize], value: f64) {
        assert_eq!(indices.len(), self.degree);
        let mask = mask_of(indices).expect("repeated index");
        self.coeffs[mask] = sort_sign(indices) * value;
    }

    /// Value of a 0-form.
    pub fn value(&self) -> f64 {
        debug_assert_eq!(self.degree, 0);
        self.coeffs[0]
    }

    fn masks(&self) -> impl Iterator<Item = usize> + '_ {
        let k = self.degree as u32;
        (0..1usize << self.dim).filter(move |m| m.count_ones() == k)
    }

    /// Strictly increasing index tuples with their coefficients.
    pub fn terms(&self) -> Vec<(Vec<usize>, f64)> {
        self.masks()
            .map(|mask| ((0..self.dim).filter(|i| mask & (1 << i) != 0).collect(), self.coeffs[mask]))
            .collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| c * x).collect(), ..*self }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for a in self.masks() {
            let ca = self.coeffs[a];
            if ca == 0.0 {
                continue;
            }
            for b in other.masks() {
                if a & b != 0 {
                    continue;
                }
                let cb = other.coeffs[b];
                if cb == 0.0 {
                    continue;
                }
                // dx_A ∧ dx_B = (-1)^{#(a in A, b in B, a > b)} dx_{A∪B}
                let mut swaps = 0;
                for j in 0..self.dim {
                    if b & (1 << j) != 0 {
                        swaps += (a >> (j + 1)).count_ones();
                    }
                }
                let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[a | b] += sign * ca * cb;
            }
        }
        out
    }

    /// Contraction with a vector in the first slot: `(ι_v ω)(…) = ω(v, …)`.
    pub fn interior(&self, v: &[f64]) -> Self {
        assert_eq!(v.len(), self.dim);
        assert!(self.degree > 0, "interior product of a 0-form");
        let mut out = Self::zero(self.dim, self.degree - 1);
        for mask in self.masks() {
            let c = self.coeffs[mask];
            if c == 0.0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if mask & (1 << j) == 0 || vj == 0.0 {
                    continue;
                }
                let position = (mask & ((1 << j) - 1)).count_ones();
                let sign = if position % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[mask & !(1 << j)] += sign * c * vj;
            }
        }
        out
    }

    /// `ω(v_1, …, v_k)`.
    pub fn evaluate(&self, vectors: &[&[f64]]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        vectors.iter().fold(self.clone(), |m, v| m.interior(v)).value()
    }
}

impl AddAssign<&Multicovector> for Multicovector {
    fn add_assign(&mut self, rhs: &Multicovector) {
        assert_eq!((self.dim, self.degree), (rhs.dim, rhs.degree));
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &Multicovector {
    type Output = Multicovector;
    fn add(self, rhs: Self) -> Multicovector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Multicovector {
    type Output = Multicovector;
    fn sub(self, rhs: Self) -> Multicovector {
        let mut out = self.clone();
        out += &rhs.scale(-1.0);
        out
    }
}
