//! Dense complex matrix/vector algebra used by the whole crate.
//!
//! Everything here is small and dense: the networks under study have a
//! handful of nodes per group, so the matrices are tiny and the plain
//! row-major triple-loop implementations are both the simplest and the
//! fastest option. All values are immutable after construction and safe to
//! share across threads.

mod chol;
mod eig;

pub use chol::{solve_hermitian_pd, Cholesky};
pub use eig::{
    dominant_eig_power, dominant_eig_qr, eig_hermitian, generalized_dominant, rayleigh_quotient,
    EigMethod, EigenResult, HermitianEigen,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the Hermitian-symmetry check (max absolute asymmetry).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Complex matrix, row-major storage.
///
/// Invariants: `rows >= 1`, `cols >= 1`, `data.len() == rows * cols`, all
/// entries finite. Violations are programmer errors and panic.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        assert!(
            data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "matrix entries must be finite"
        );
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn real_diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
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

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Complex-conjugate (Hermitian) transpose.
    pub fn hermitian(&self) -> CMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> CMatrix {
        CMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z.conj()).collect(),
        )
    }

    /// Standard complex matrix product.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    sum += self[(r, k)] * other[(k, c)];
                }
                out[(r, c)] = sum;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[r] += self[(r, c)] * v[c];
            }
        }
        Ok(CVector::new(out))
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &CMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(CMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&z| z * s).collect(),
        )
    }

    pub fn scale_re(&self, s: f64) -> CMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> CVector {
        CVector::new((0..self.rows).map(|r| self[(r, j)]).collect())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max |a[i][j] - conj(a[j][i])| over the square matrix.
    pub fn hermitian_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Error unless the matrix is square and Hermitian within [`HERMITIAN_TOL`].
    pub fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let asymmetry = self.hermitian_asymmetry();
        if asymmetry >= HERMITIAN_TOL {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Complex column vector.
///
/// Invariants: length >= 1, entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

impl CVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        assert!(!data.is_empty(), "vector length must be >= 1");
        assert!(
            data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "vector entries must be finite"
        );
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn ones(n: usize) -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Complex64) -> Self {
        Self::new((0..n).map(f).collect())
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Hermitian inner product: `self` is the bra, i.e. sum of conj(self_k) * other_k.
    pub fn dot(&self, other: &CVector) -> Complex64 {
        assert_eq!(self.len(), other.len(), "dot length mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> CVector {
        CVector::new(self.data.iter().map(|&z| z * s).collect())
    }

    pub fn scale_re(&self, s: f64) -> CVector {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "add length mismatch");
        CVector::new(
            self.data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "sub length mismatch");
        CVector::new(
            self.data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    /// Outer product `self * other^H`.
    pub fn outer(&self, other: &CVector) -> CMatrix {
        CMatrix::from_fn(self.len(), other.len(), |r, c| {
            self.data[r] * other.data[c].conj()
        })
    }

    /// Unit-norm copy. Panics on the zero vector.
    pub fn normalized(&self) -> CVector {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        self.scale_re(1.0 / n)
    }

    /// Diagonal matrix with this vector on the diagonal.
    pub fn into_diag(&self) -> CMatrix {
        CMatrix::diag(&self.data)
    }
}

impl std::ops::Index<usize> for CVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl std::ops::IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.data[i]
    }
}

/// Quadratic form w^H M w.
pub fn quad_form(w: &CVector, m: &CMatrix) -> Result<Complex64> {
    let mv = m.mul_vec(w)?;
    Ok(w.dot(&mv))
}
