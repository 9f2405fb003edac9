//! Dense complex linear algebra and the tolerance policy shared by every
//! other module.
//!
//! Matrices are thin wrappers over `nalgebra::DMatrix<Complex<f64>>`. All
//! residual comparisons are relative: a quantity is "zero" when it is below
//! `rel_eps` times the norm of the operands it was computed from.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const ZERO: C64 = Complex::new(0.0, 0.0);
pub const ONE: C64 = Complex::new(1.0, 0.0);

/// Relative tolerance and conditioning threshold used for every numerical decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rel_eps: f64,
    pub cond_max: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rel_eps: 1e-9,
            cond_max: 1e12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rel_eps: f64, cond_max: f64) -> Result<Self> {
        if !(rel_eps > 0.0 && rel_eps.is_finite()) {
            return Err(Error::InvalidTolerance(format!("rel_eps must be > 0, got {rel_eps}")));
        }
        if cond_max.is_nan() || cond_max <= 1.0 {
            return Err(Error::InvalidTolerance(format!("cond_max must be > 1, got {cond_max}")));
        }
        Ok(ToleranceConfig { rel_eps, cond_max })
    }

    /// Tolerance for a relative identity residual involving an inverse with
    /// condition number `cond`: `10 * rel_eps * max(1, cond)`.
    pub fn identity_tolerance(&self, cond: f64) -> f64 {
        10.0 * self.rel_eps * cond.max(1.0)
    }
}

/// Dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                let z = self.0[(i, j)];
                write!(f, "{}{:+}i", z.re, z.im)?;
            }
        }
        write!(f, "]")
    }
}

fn check_finite(m: &DMatrix<C64>) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

impl ComplexMatrix {
    pub fn new(inner: DMatrix<C64>) -> Result<Self> {
        check_finite(&inner)?;
        Ok(ComplexMatrix(inner))
    }


    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let n = values.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO }))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        ComplexMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has length {} but row 0 has length {ncols}",
                r.len()
            )));
        }
        Self::new(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
    }

    /// Builds a `nrows x columns.len()` matrix whose j-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[Vec<C64>]) -> Result<Self> {
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != nrows) {
            return Err(Error::DimensionMismatch(format!(
                "column {j} has length {} but {nrows} rows were requested",
                c.len()
            )));
        }
        Self::new(DMatrix::from_fn(nrows, columns.len(), |i, j| columns[j][i]))
    }

    /// Real matrix from row-major data. Panics if `data.len() != rows * cols`.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        ComplexMatrix(DMatrix::from_fn(rows, cols, |i, j| {
            Complex::new(data[i * cols + j], 0.0)
        }))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<C64> {
        self.0.row(i).iter().copied().collect()
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn scale(&self, s: C64) -> ComplexMatrix {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    /// Multiplies column j by `weights[j]`, i.e. `self * diag(weights)`.
    pub fn scale_columns(&self, weights: &[C64]) -> ComplexMatrix {
        assert_eq!(weights.len(), self.cols(), "one weight per column");
        let mut out = self.0.clone();
        for (j, w) in weights.iter().enumerate() {
            out.column_mut(j).apply(|z| *z *= w);
        }
        ComplexMatrix(out)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols(), "vector length must equal column count");
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows() == 0 || self.cols() == 0 {
            return Vec::new();
        }
        let svd = SVD::new(self.0.clone(), false, false);
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn hstack(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        let rows = blocks.first().map_or(0, ComplexMatrix::rows);
        if blocks.iter().any(|b| b.rows() != rows) {
            return Err(Error::DimensionMismatch("hstack blocks differ in row count".into()));
        }
        let cols: usize = blocks.iter().map(ComplexMatrix::cols).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            out.view_mut((0, offset), (rows, b.cols())).copy_from(&b.0);
            offset += b.cols();
        }
        Ok(ComplexMatrix(out))
    }

    pub fn vstack(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        let cols = blocks.first().map_or(0, ComplexMatrix::cols);
        if blocks.iter().any(|b| b.cols() != cols) {
            return Err(Error::DimensionMismatch("vstack blocks differ in column count".into()));
        }
        let rows: usize = blocks.iter().map(ComplexMatrix::rows).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            out.view_mut((offset, 0), (b.rows(), cols)).copy_from(&b.0);
            offset += b.rows();
        }
        Ok(ComplexMatrix(out))
    }

    /// Block-diagonal matrix from square or rectangular blocks.
    pub fn block_diagonal(blocks: &[ComplexMatrix]) -> ComplexMatrix {
        let rows: usize = blocks.iter().map(ComplexMatrix::rows).sum();
        let cols: usize = blocks.iter().map(ComplexMatrix::cols).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.view_mut((r, c), (b.rows(), b.cols())).copy_from(&b.0);
            r += b.rows();
            c += b.cols();
        }
        ComplexMatrix(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "shape mismatch"
        );
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols(), rhs.rows(), "matrix product shape mismatch");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// Moore–Penrose pseudoinverse. Singular values at or below
/// `rel_eps * sigma_max` are treated as zero.
pub fn pseudoinverse(a: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    let (r, c) = (a.rows(), a.cols());
    if r == 0 || c == 0 {
        return ComplexMatrix::zeros(c, r);
    }
    let svd = SVD::new(a.0.clone(), true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return ComplexMatrix::zeros(c, r);
    }
    let cutoff = tol.rel_eps * sigma_max;
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let k = svd.singular_values.len();
    let inv_sigma = DMatrix::from_fn(k, k, |i, j| {
        let s = svd.singular_values[i];
        if i == j && s > cutoff {
            Complex::new(1.0 / s, 0.0)
        } else {
            ZERO
        }
    });
    ComplexMatrix(v_t.adjoint() * inv_sigma * u.adjoint())
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn spectrum_hermitian(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "spectrum of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let norm = a.norm();
    let asym = (a - &a.adjoint()).norm();
    if asym > tol.rel_eps * norm {
        return Err(Error::NotHermitian {
            asymmetry: if norm > 0.0 { asym / norm } else { asym },
        });
    }
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    let sym = (&a.0 + a.0.adjoint()) * Complex::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Inverse of a square matrix, refused when `sigma_min <= sigma_max / cond_max`.
pub fn try_invert(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let svd = SVD::new(a.0.clone(), true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if sigma_max == 0.0 || sigma_min <= sigma_max / tol.cond_max {
        let ratio = if sigma_max == 0.0 { 0.0 } else { sigma_min / sigma_max };
        return Err(Error::NotInvertible { ratio });
    }
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let inv_sigma = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(1.0 / svd.singular_values[i], 0.0)
        } else {
            ZERO
        }
    });
    ComplexMatrix::new(v_t.adjoint() * inv_sigma * u.adjoint())
}

/// Spectral condition number `sigma_max / sigma_min`; infinite for singular input.
pub fn condition_number(a: &ComplexMatrix) -> f64 {
    let s = a.singular_values();
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Number of singular values above `rel_eps * sigma_max`.
pub fn numerical_rank(a: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    let s = a.singular_values();
    let Some(&sigma_max) = s.first() else {
        return 0;
    };
    if sigma_max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol.rel_eps * sigma_max).count()
}

/// `||a - b|| / ||b||`, or the absolute difference when `b` vanishes.
pub fn relative_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let diff = (a - b).norm();
    let scale = b.norm();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<f, g>`, linear in `f` and conjugate-linear in `g`.
pub fn inner(f: &[C64], g: &[C64]) -> C64 {
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum()
}
