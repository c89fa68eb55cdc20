//! Dense square matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn add_to(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] += value;
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// `vᵀ M v` for a real vector.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .zip(v)
            .map(|(row, &vi)| vi * row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
            .sum()
    }

    /// `ψ† M ψ` for a complex vector; real because `M` is real symmetric.
    pub fn hermitian_form(&self, psi: &[Complex64]) -> f64 {
        debug_assert_eq!(psi.len(), self.dim);
        let mut total = 0.0;
        for (i, row) in self.data.chunks_exact(self.dim).enumerate() {
            let ci = psi[i].conj();
            let mut acc = Complex64::new(0.0, 0.0);
            for (&m, &pj) in row.iter().zip(psi) {
                if m != 0.0 {
                    acc += pj * m;
                }
            }
            total += (ci * acc).re;
        }
        total
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn add_to(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] += value;
    }

    /// Largest entrywise distance to a real matrix of the same size.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.dim, other.dim());
        self.data
            .iter()
            .zip(other.as_slice())
            .map(|(a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}
