//! Cholesky factorization of Hermitian positive definite matrices and the
//! linear solves built on it. Systems with these matrices are never solved
//! through an explicit inverse.

use num_complex::Complex64;

use super::{CMatrix, CVector};
use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor L with A = L L^H.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: CMatrix,
}

impl Cholesky {
    /// Factor a Hermitian positive definite matrix.
    ///
    /// Fails with [`Error::NotHermitian`] if the input is visibly asymmetric
    /// and with [`Error::NotPositiveDefinite`] (naming the offending pivot)
    /// if any pivot is nonpositive.
    pub fn new(a: &CMatrix) -> Result<Self> {
        a.require_hermitian()?;
        let n = a.rows();
        let mut l = CMatrix::zeros(n, n);
        for j in 0..n {
            let mut pivot = a[(j, j)].re;
            for k in 0..j {
                pivot -= l[(j, k)].norm_sqr();
            }
            if !(pivot > 0.0) || !pivot.is_finite() {
                return Err(Error::NotPositiveDefinite { index: j, pivot });
            }
            let ljj = pivot.sqrt();
            l[(j, j)] = Complex64::new(ljj, 0.0);
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { l })
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    pub fn lower(&self) -> &CMatrix {
        &self.l
    }

    /// Solve L y = b (forward substitution).
    pub fn solve_lower_vec(&self, b: &CVector) -> CVector {
        let n = self.dim();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        CVector::new(y)
    }

    /// Solve L^H x = b (back substitution).
    pub fn solve_upper_vec(&self, b: &CVector) -> CVector {
        let n = self.dim();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in (i + 1)..n {
                // (L^H)[i][k] = conj(L[k][i])
                s -= self.l[(k, i)].conj() * x[k];
            }
            x[i] = s / self.l[(i, i)];
        }
        CVector::new(x)
    }

    /// Solve A x = b via the two triangular solves.
    pub fn solve_vec(&self, b: &CVector) -> CVector {
        self.solve_upper_vec(&self.solve_lower_vec(b))
    }

    /// Solve L Y = B column by column.
    pub fn solve_lower_mat(&self, b: &CMatrix) -> CMatrix {
        let n = self.dim();
        assert_eq!(b.rows(), n, "rhs row count mismatch");
        let mut out = CMatrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let y = self.solve_lower_vec(&b.col(j));
            for i in 0..n {
                out[(i, j)] = y[i];
            }
        }
        out
    }

    /// Solve A X = B column by column.
    pub fn solve_mat(&self, b: &CMatrix) -> CMatrix {
        let n = self.dim();
        assert_eq!(b.rows(), n, "rhs row count mismatch");
        let mut out = CMatrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(&b.col(j));
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }
}

/// Solve Z X = B for Hermitian positive definite Z.
pub fn solve_hermitian_pd(z: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if z.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "system is {}x{} but rhs has {} rows",
            z.rows(),
            z.cols(),
            b.rows()
        )));
    }
    Ok(Cholesky::new(z)?.solve_mat(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::new(
            rows,
            cols,
            (0..rows * cols)
                .map(|_| C::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
                .collect(),
        )
    }

    /// Random Hermitian PD matrix B B^H + I.
    pub(crate) fn random_hpd(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
        let b = random_matrix(rng, n, n);
        b.matmul(&b.hermitian())
            .unwrap()
            .add(&CMatrix::identity(n))
            .unwrap()
    }

    #[test]
    fn identity_system_returns_rhs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_matrix(&mut rng, 3, 2);
        let x = solve_hermitian_pd(&CMatrix::identity(3), &b).unwrap();
        assert!(x.sub(&b).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn diagonal_system() {
        let z = CMatrix::real_diag(&[2.0, 4.0]);
        let b = CMatrix::new(2, 1, vec![C::new(2.0, 0.0), C::new(4.0, 0.0)]);
        let x = solve_hermitian_pd(&z, &b).unwrap();
        assert!((x[(0, 0)] - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((x[(1, 0)] - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn construct_then_solve_recovers_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1usize, 2, 4, 6] {
            let z = random_hpd(&mut rng, n);
            let x0 = random_matrix(&mut rng, n, 2);
            let b = z.matmul(&x0).unwrap();
            let x = solve_hermitian_pd(&z, &b).unwrap();
            assert!(
                x.sub(&x0).unwrap().max_abs() <= 1e-8,
                "n={n}: error {}",
                x.sub(&x0).unwrap().max_abs()
            );
            // Residual contract.
            let resid = z.matmul(&x).unwrap().sub(&b).unwrap().max_abs();
            assert!(resid <= 1e-9 * b.max_abs().max(1e-300));
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let z = CMatrix::new(
            2,
            2,
            vec![C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)],
        );
        let b = CMatrix::identity(2);
        match solve_hermitian_pd(&z, &b) {
            Err(Error::NotHermitian { asymmetry }) => assert!(asymmetry > 0.5),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn rejects_indefinite_input_naming_pivot() {
        let z = CMatrix::real_diag(&[1.0, -3.0]);
        let b = CMatrix::identity(2);
        match solve_hermitian_pd(&z, &b) {
            Err(Error::NotPositiveDefinite { index, pivot }) => {
                assert_eq!(index, 1);
                assert!(pivot < 0.0);
            }
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }
}
