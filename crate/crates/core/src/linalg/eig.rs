//! Dominant-eigenvector engines: a full Hermitian eigendecomposition (QR
//! algorithm) and an operator-based power method, plus the generalized
//! Hermitian-definite pencil solver built on either.
//!
//! The QR path follows the classic route: unitary Householder reduction of
//! the complex Hermitian matrix to a real symmetric tridiagonal form, then
//! implicitly shifted QL sweeps (the JAMA/EISPACK tql2 recurrence) with the
//! transformations accumulated into complex eigenvectors.

use num_complex::Complex64;

use super::chol::Cholesky;
use super::{quad_form, CMatrix, CVector};
use crate::error::{Error, Result};

/// Which engine computes a dominant eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigMethod {
    /// Full decomposition, dominant pair selected afterwards.
    Qr,
    /// Power iteration; only the dominant pair is computed.
    Power,
}

/// Dominant eigenpair. The vector has unit Euclidean norm and a fixed phase:
/// its first component of magnitude > 1e-12 is real and positive, which makes
/// results bitwise reproducible for identical inputs.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub value: f64,
    pub vector: CVector,
    pub iterations: usize,
    pub converged: bool,
}

/// Full eigendecomposition of a Hermitian matrix; eigenvalues in descending
/// order, `vectors` holding the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

/// Rotate a unit vector to the canonical phase: first component with
/// magnitude > 1e-12 becomes real positive (exactly zero imaginary part).
pub(crate) fn fix_phase(v: &mut CVector) {
    let n = v.len();
    let pivot = (0..n).find(|&i| v[i].norm() > 1e-12);
    if let Some(j) = pivot {
        let mag = v[j].norm();
        let phase = v[j].conj() / mag;
        for k in 0..n {
            if k != j {
                v[k] *= phase;
            }
        }
        v[j] = Complex64::new(mag, 0.0);
    }
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form A = Q T Q^H. Returns (diagonal, subdiagonal, Q) where subdiag[i] is
/// the coupling between i-1 and i (subdiag[0] = 0).
fn tridiagonalize(a: &CMatrix) -> (Vec<f64>, Vec<f64>, CMatrix) {
    let n = a.rows();
    let mut a = a.clone();
    let mut q = CMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let mut xnorm_sqr = 0.0;
        for i in (k + 1)..n {
            xnorm_sqr += a[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;

        // Householder vector v supported on rows k+1..n, chosen so that
        // (I - 2vv^H) maps the column to alpha * e_{k+1}.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = a[(i, k)];
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // Hermitian rank-2 update: H A H = A - v q^H - q v^H
        // with p = 2 A v, kappa = v^H p, q = p - (kappa/2) v.
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += a[(i, j)] * v[j];
            }
            p[i] = s * 2.0;
        }
        let kappa: Complex64 = v.iter().zip(p.iter()).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<Complex64> = p
            .iter()
            .zip(v.iter())
            .map(|(pi, vi)| pi - vi * (kappa * 0.5))
            .collect();
        for i in 0..n {
            for j in 0..n {
                let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(i, j)] -= delta;
            }
        }

        // Accumulate Q <- Q (I - 2 v v^H).
        for r in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                t += q[(r, j)] * v[j];
            }
            let t2 = t * 2.0;
            for c in (k + 1)..n {
                let delta = t2 * v[c].conj();
                q[(r, c)] -= delta;
            }
        }
    }

    // The matrix is now Hermitian tridiagonal with a real diagonal. Scale by
    // a diagonal unitary so the subdiagonal becomes real nonnegative, folding
    // the phases into Q's columns.
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = Complex64::new(1.0, 0.0);
    for k in 0..n.saturating_sub(1) {
        let t = a[(k + 1, k)];
        let tn = t.norm();
        e[k + 1] = tn;
        if tn > 0.0 {
            phase = t * phase / tn;
            for r in 0..n {
                let scaled = q[(r, k + 1)] * phase;
                q[(r, k + 1)] = scaled;
            }
        }
    }
    (d, e, q)
}

/// Implicitly shifted QL sweeps on a real symmetric tridiagonal matrix,
/// accumulating the (real) rotations into the complex column basis `v`.
/// JAMA tql2 recurrence with a total sweep budget.
fn tql2(d: &mut [f64], e: &mut [f64], v: &mut CMatrix, max_sweeps: usize) -> Result<usize> {
    let n = d.len();
    if n == 0 {
        return Ok(0);
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    let mut total = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m >= n {
            m = n - 1;
        }
        if m > l {
            loop {
                total += 1;
                if total > max_sweeps {
                    return Err(Error::EigNotConverged {
                        sweeps: total - 1,
                        residual: e[l].abs(),
                    });
                }

                // Wilkinson-style implicit shift.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // Implicit QL sweep from m down to l.
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g2 = c * e[i];
                    let h2 = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g2;
                    d[i + 1] = h2 + s * (c * g2 + s * d[i]);

                    for k in 0..n {
                        let h3 = v[(k, i + 1)];
                        v[(k, i + 1)] = v[(k, i)] * s + h3 * c;
                        v[(k, i)] = v[(k, i)] * c - h3 * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(total)
}

/// Full eigendecomposition of a Hermitian matrix via Householder reduction
/// and shifted QL/QR sweeps. Eigenvalues are returned in descending order;
/// exact ties keep their pre-sort (lowest-index) order.
pub fn eig_hermitian(m: &CMatrix) -> Result<HermitianEigen> {
    m.require_hermitian()?;
    let n = m.rows();
    let (mut d, mut e, mut q) = tridiagonalize(m);
    let sweeps = tql2(&mut d, &mut e, &mut q, 100 * n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap().then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut col = q.col(old_col).normalized();
        fix_phase(&mut col);
        for r in 0..n {
            vectors[(r, new_col)] = col[r];
        }
    }
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Dominant eigenpair of a Hermitian matrix through the full QR-algorithm
/// decomposition.
pub fn dominant_eig_qr(m: &CMatrix) -> Result<EigenResult> {
    let he = eig_hermitian(m)?;
    Ok(EigenResult {
        value: he.values[0],
        vector: he.vectors.col(0),
        iterations: he.sweeps,
        converged: true,
    })
}

/// Power iteration for the dominant eigenpair of the linear operator
/// `apply`, started from the normalized all-ones vector so runs are
/// reproducible. Stops when the successive Rayleigh-quotient change drops
/// below `tol`; hitting `max_iter` returns the best iterate with
/// `converged = false`.
pub fn dominant_eig_power(
    apply: impl Fn(&CVector) -> CVector,
    dim: usize,
    tol: f64,
    max_iter: usize,
) -> EigenResult {
    assert!(dim >= 1, "operator dimension must be >= 1");
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_iter >= 1, "max_iter must be >= 1");

    let mut v = CVector::ones(dim).scale_re(1.0 / (dim as f64).sqrt());
    let mut u = apply(&v);
    let mut lambda = v.dot(&u).re;

    for it in 1..=max_iter {
        let nrm = u.norm();
        if nrm == 0.0 {
            // Operator annihilates the iterate; the quotient is exactly zero.
            fix_phase(&mut v);
            return EigenResult {
                value: 0.0,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        v = u.scale_re(1.0 / nrm);
        u = apply(&v);
        let lambda_new = v.dot(&u).re;
        if (lambda_new - lambda).abs() < tol {
            fix_phase(&mut v);
            return EigenResult {
                value: lambda_new,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        lambda = lambda_new;
    }

    fix_phase(&mut v);
    EigenResult {
        value: lambda,
        vector: v,
        iterations: max_iter,
        converged: false,
    }
}

pub(crate) const POWER_TOL_DEFAULT: f64 = 1e-10;
pub(crate) const POWER_MAX_ITER_DEFAULT: usize = 1000;

/// Dominant eigenpair of the Hermitian-definite pencil (phi, z), i.e. of
/// Z^-1 phi, without ever forming that product explicitly.
///
/// The QR path whitens with the Cholesky factor Z = L L^H, solves the
/// Hermitian problem on L^-1 phi L^-H and maps the eigenvector back through
/// L^-H. The power path iterates v <- Z \ (phi v) with the factorization
/// computed once. The returned value is max over w of (w^H phi w)/(w^H Z w).
pub fn generalized_dominant(phi: &CMatrix, z: &CMatrix, method: EigMethod) -> Result<EigenResult> {
    phi.require_hermitian()?;
    z.require_hermitian()?;
    if phi.rows() != z.rows() {
        return Err(Error::Shape(format!(
            "pencil dimensions differ: {}x{} vs {}x{}",
            phi.rows(),
            phi.cols(),
            z.rows(),
            z.cols()
        )));
    }
    let n = z.rows();
    let chol = Cholesky::new(z)?;
    match method {
        EigMethod::Qr => {
            // S = L^-1 phi L^-H, Hermitian by construction; symmetrize to
            // remove rounding drift before the decomposition.
            let y = chol.solve_lower_mat(phi);
            let s_raw = chol.solve_lower_mat(&y.hermitian());
            let s = s_raw.add(&s_raw.hermitian()).unwrap().scale_re(0.5);
            let he = eig_hermitian(&s)?;
            let u = he.vectors.col(0);
            let mut w = chol.solve_upper_vec(&u).normalized();
            fix_phase(&mut w);
            Ok(EigenResult {
                value: he.values[0],
                vector: w,
                iterations: he.sweeps,
                converged: true,
            })
        }
        EigMethod::Power => {
            let apply = |v: &CVector| chol.solve_vec(&phi.mul_vec(v).expect("pencil dims"));
            Ok(dominant_eig_power(
                apply,
                n,
                POWER_TOL_DEFAULT,
                POWER_MAX_ITER_DEFAULT,
            ))
        }
    }
}

/// Generalized Rayleigh quotient (w^H phi w)/(w^H z w).
///
/// Each quadratic form must be real up to a 1e-10 relative imaginary
/// residue, which is then discarded. A nonpositive denominator is an error.
pub fn rayleigh_quotient(w: &CVector, phi: &CMatrix, z: &CMatrix) -> Result<f64> {
    let num = real_quad_form(w, phi)?;
    let den = real_quad_form(w, z)?;
    if den <= 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

/// Quadratic form that must be real: returns the real part after checking
/// the imaginary residue.
pub(crate) fn real_quad_form(w: &CVector, m: &CMatrix) -> Result<f64> {
    let q = quad_form(w, m)?;
    if q.im.abs() > 1e-10 * q.norm() {
        return Err(Error::ImaginaryResidue {
            relative: q.im.abs() / q.norm(),
        });
    }
    Ok(q.re)
}
