//! Dense complex linear algebra for small matrices (dimension <= 8).
//!
//! Everything here is sized for the Hamiltonians of this crate: arithmetic,
//! adjoint/trace, the matrix exponential, Hermitian and general
//! eigendecompositions, and inversion. Storage is row-major `Complex64`.

use num_complex::Complex64;

use crate::error::{Error, Result};

mod eig;
mod expm;

pub use eig::{eig_general, eig_hermitian, EigenDecomposition};
pub use expm::expm;

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, the universal carrier for Hamiltonians, propagators,
/// and density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major data. Rejects length mismatches, empty shapes and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for results of arithmetic on already-valid
    /// matrices; skips the finiteness scan.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts(rows, cols, vec![C_ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C_ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in diag.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch(self.rows, self.cols, v.len(), 1));
        }
        let mut out = vec![C_ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C_ZERO;
            for j in 0..self.cols {
                acc += self.data[i * self.cols + j] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|&z| z * factor).collect();
        Self::from_parts(self.rows, self.cols, data)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Sum of diagonal entries. Errors on non-square input.
    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum, the norm driving the exponential scaling.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of `A - A^dagger`; zero for exactly Hermitian input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// LU factorization with partial pivoting, shared by `inverse`, `solve`, and
/// the exponential's rational kernel.
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    min_pivot: f64,
    max_pivot: f64,
}

pub(crate) fn lu_factor(a: &ComplexMatrix) -> Result<LuFactors> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut lu = a.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot: f64 = 0.0;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = lu[k * n + k].norm();
        for r in (k + 1)..n {
            let mag = lu[r * n + k].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_row != k {
            for c in 0..n {
                lu.swap(k * n + c, pivot_row * n + c);
            }
            perm.swap(k, pivot_row);
        }
        min_pivot = min_pivot.min(pivot_mag);
        max_pivot = max_pivot.max(pivot_mag);
        if pivot_mag == 0.0 {
            continue; // exactly singular; callers decide via min_pivot
        }
        let inv_pivot = lu[k * n + k].inv();
        for r in (k + 1)..n {
            let factor = lu[r * n + k] * inv_pivot;
            lu[r * n + k] = factor;
            for c in (k + 1)..n {
                let sub = factor * lu[k * n + c];
                lu[r * n + c] -= sub;
            }
        }
    }

    Ok(LuFactors {
        n,
        lu,
        perm,
        min_pivot,
        max_pivot,
    })
}

impl LuFactors {
    /// Ratio of largest to smallest pivot magnitude; a cheap conditioning
    /// proxy adequate at these dimensions.
    pub(crate) fn condition_proxy(&self) -> f64 {
        if self.min_pivot == 0.0 {
            f64::INFINITY
        } else {
            self.max_pivot / self.min_pivot
        }
    }

    pub(crate) fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    /// Solve `A x = b` for every column of `b`.
    pub(crate) fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.rows() != self.n {
            return Err(Error::DimMismatch(self.n, self.n, b.rows(), b.cols()));
        }
        if self.min_pivot == 0.0 {
            return Err(Error::Singular {
                estimate: f64::INFINITY,
            });
        }
        let n = self.n;
        let ncols = b.cols();
        let mut x = ComplexMatrix::zeros(n, ncols);
        for c in 0..ncols {
            // permuted forward substitution
            let mut y = vec![C_ZERO; n];
            for i in 0..n {
                let mut acc = b.get(self.perm[i], c);
                for j in 0..i {
                    acc -= self.lu[i * n + j] * y[j];
                }
                y[i] = acc;
            }
            // back substitution
            for i in (0..n).rev() {
                let mut acc = y[i];
                for j in (i + 1)..n {
                    acc -= self.lu[i * n + j] * x.get(j, c);
                }
                x.set(i, c, acc / self.lu[i * n + i]);
            }
        }
        Ok(x)
    }
}

/// Solve the linear system `a x = b`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = lu_factor(a)?;
    let scale = a.norm_fro();
    if lu.min_pivot() <= 1e-12 * scale {
        return Err(Error::Singular {
            estimate: lu.condition_proxy(),
        });
    }
    lu.solve(b)
}

/// Matrix inverse via LU with partial pivoting. Near-singular inputs
/// (smallest pivot below `1e-12 * ||a||`) are rejected with a conditioning
/// estimate attached.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    solve(a, &ComplexMatrix::identity(a.rows()))
}
