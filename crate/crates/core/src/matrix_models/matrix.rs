//! Dense complex matrices with the tensor operations used by the models.
//!
//! Storage is row-major. For a bipartite space `C^{d1} ⊗ C^{d2}` the basis
//! vector `e_i ⊗ e_j` has composite index `i * d2 + j`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which tensor factor an operation acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Factor {
    First,
    Second,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix unit `E_ij` of size `n × n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Row-major data of length `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `self += other`, panicking on a shape mismatch.
    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let row = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let other_row = &other.data[k * oc..(k + 1) * oc];
                for (r, b) in row.iter_mut().zip(other_row) {
                    *r += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of {}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    fn check_bipartite(&self, dims: (usize, usize)) -> Result<()> {
        let n = dims.0 * dims.1;
        if self.rows != n || self.cols != n {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} matrix on a {}⊗{} space",
                self.rows, self.cols, dims.0, dims.1
            )));
        }
        Ok(())
    }

    /// Traces out one factor of `C^{d1} ⊗ C^{d2}`.
    pub fn partial_trace(&self, traced: Factor, dims: (usize, usize)) -> Result<Self> {
        self.check_bipartite(dims)?;
        let (d1, d2) = dims;
        Ok(match traced {
            Factor::First => Self::from_fn(d2, d2, |b, c| {
                (0..d1).map(|a| self[(a * d2 + b, a * d2 + c)]).sum()
            }),
            Factor::Second => Self::from_fn(d1, d1, |a, c| {
                (0..d2).map(|b| self[(a * d2 + b, c * d2 + b)]).sum()
            }),
        })
    }

    /// Transposes the second factor: `(e_i ⊗ e_j)(e_k ⊗ e_l)* ↦ (e_i ⊗ e_l)(e_k ⊗ e_j)*`.
    pub fn partial_transpose(&self, dims: (usize, usize)) -> Result<Self> {
        self.check_bipartite(dims)?;
        let d2 = dims.1;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            let (i, l) = (r / d2, r % d2);
            let (k, j) = (c / d2, c % d2);
            self[(i * d2 + j, k * d2 + l)]
        }))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) < tol
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "eigenvalues of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let m = DMatrix::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    /// Hermitian within `1e-10` and smallest eigenvalue above `-1e-8 · ‖Z‖_max`.
    pub fn is_psd(&self) -> bool {
        if !self.is_hermitian(1e-10 * self.max_abs().max(1.0)) {
            return false;
        }
        match self.hermitian_eigenvalues() {
            Ok(ev) => ev.first().is_none_or(|&e| e > -1e-8 * self.max_abs()),
            Err(_) => false,
        }
    }
}

/// `ω_ℓ = Ω Ω*` with `Ω = Σ e_i ⊗ e_i`, an `ℓ² × ℓ²` rank-one matrix.
pub fn omega(l: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(l * l, l * l, |r, c| {
        if r % (l + 1) == 0 && c % (l + 1) == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("compatible shapes")
    }
}
