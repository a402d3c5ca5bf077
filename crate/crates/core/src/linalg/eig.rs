//! Cyclic Jacobi eigensolver for Hermitian matrices, and the spectral
//! quantities built on it (operator norm, positivity, square roots).
//! When only eigenvalues are needed the tridiagonal bisection path is used.

use super::matrix::{CMatrix, C64, ZERO};
use super::tridiag;
use super::DEFAULT_TOL;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `m = U diag(values) U*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEig {
    pub fn reconstruct(&self) -> CMatrix {
        let d: Vec<C64> = self.values.iter().map(|&v| C64::new(v, 0.0)).collect();
        self.vectors
            .matmul(&CMatrix::diagonal(&d))
            .matmul(&self.vectors.adjoint())
    }

    /// Apply a real function to the spectrum.
    pub fn functional_calculus(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d: Vec<C64> = self.values.iter().map(|&v| C64::new(f(v), 0.0)).collect();
        self.vectors
            .matmul(&CMatrix::diagonal(&d))
            .matmul(&self.vectors.adjoint())
    }
}

fn check_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Hermitian matrix must be square, got {:?}",
            m.shape()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > tol * (1.0 + m.frobenius()) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

pub fn herm_eig(m: &CMatrix) -> Result<HermEig> {
    check_hermitian(m, DEFAULT_TOL)?;
    let (values, vectors) = jacobi(m, true)?;
    Ok(HermEig {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Ascending eigenvalues only; skips eigenvector accumulation.
pub fn herm_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m, DEFAULT_TOL)?;
    Ok(tridiag::eigenvalues(m))
}

fn jacobi(m: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    let n = m.rows();
    // Symmetrize so the rotations act on an exactly Hermitian array.
    let mut a = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = if want_vectors {
        Some(CMatrix::identity(n))
    } else {
        None
    };
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n <= 1 || scale == 0.0 {
        let values = (0..n).map(|i| a[i * n + i].re).collect();
        return Ok(finish(values, v, n));
    }
    let stop = f64::EPSILON * scale * 1e-2;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / g;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = [[c, s·e], [−s·ē, c]] on coordinates (p, q); A ← J* A J.
                let se = phase * s;
                let se_bar = se.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * se_bar;
                    a[k * n + q] = akp * se + akq * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * se;
                    a[q * n + k] = apk * se_bar + aqk * c;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * se_bar;
                        v[(k, q)] = vkp * se + vkq * c;
                    }
                }
            }
        }
    }
    if !converged {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() > 1e-13 * scale {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok(finish(values, v, n))
}

fn finish(values: Vec<f64>, v: Option<CMatrix>, n: usize) -> (Vec<f64>, Option<CMatrix>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let v = v.map(|v| CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]));
    (sorted, v)
}

/// Operator norm: square root of the largest eigenvalue of `m* m`.
pub fn op_norm(m: &CMatrix) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return Ok(0.0);
    }
    // Diagonalize the smaller Gram matrix.
    let gram = if m.cols() <= m.rows() {
        m.adjoint().matmul(m)
    } else {
        m.matmul(&m.adjoint())
    };
    let vals = tridiag::eigenvalues(&gram);
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Positive semidefiniteness: smallest eigenvalue ≥ −tol·(1 + ‖m‖).
pub fn is_psd(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(psd_margin(m, tol)? >= 0.0)
}

/// `λ_min + tol·(1 + ‖m‖)`; nonnegative exactly when `is_psd` holds.
pub fn psd_margin(m: &CMatrix, tol: f64) -> Result<f64> {
    check_hermitian(m, tol.max(DEFAULT_TOL))?;
    let vals = tridiag::eigenvalues(m);
    let Some(&min) = vals.first() else {
        return Ok(tol);
    };
    let norm = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    Ok(min + tol * (1.0 + norm))
}

/// Positive square root of a PSD matrix (negative rounding noise clipped to 0).
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = herm_eig(m)?;
    Ok(eig.functional_calculus(|x| x.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> CMatrix {
        CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn pauli_x_spectrum() {
        let e = herm_eig(&pauli_x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_spectrum() {
        let e = herm_eig(&CMatrix::identity(4)).unwrap();
        assert!(e.values.iter().all(|v| (v - 1.0).abs() < 1e-15));
        assert_eq!(e.vectors, CMatrix::identity(4));
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        // det [[2−x, 1], [1, 2−x]] = (x−1)(x−3)
        let m = CMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let e = herm_eig(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        assert!((op_norm(&m).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0), C64::new(1.0, -1.0)],
            vec![C64::new(0.0, -1.0), C64::new(-1.0, 0.0), C64::new(0.5, 0.0)],
            vec![C64::new(1.0, 1.0), C64::new(0.5, 0.0), C64::new(3.0, 0.0)],
        ])
        .unwrap();
        let e = herm_eig(&m).unwrap();
        assert!(e.reconstruct().dist(&m) <= 1e-10 * (1.0 + m.frobenius()));
        let u = &e.vectors;
        assert!(u.adjoint().matmul(u).dist(&CMatrix::identity(3)) < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = CMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(is_psd(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn op_norm_examples() {
        assert_eq!(op_norm(&CMatrix::zeros(3, 3)).unwrap(), 0.0);
        let perm = CMatrix::from_real(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!((op_norm(&perm).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&CMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]), 1e-9).unwrap());
        assert!(!is_psd(&pauli_x(), 1e-9).unwrap());
        let b = CMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64 - 2.0, (i * j) as f64));
        assert!(is_psd(&b.adjoint().matmul(&b), 1e-9).unwrap());
    }

    #[test]
    fn square_root_squares_back() {
        let b = CMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 - j as f64, 1.0 + i as f64));
        let p = b.adjoint().matmul(&b);
        let r = psd_sqrt(&p).unwrap();
        assert!(r.matmul(&r).dist(&p) < 1e-10 * (1.0 + p.frobenius()));
    }
}
