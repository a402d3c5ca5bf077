//! Eigenvalues of a Hermitian matrix by Householder reduction to a real
//! symmetric tridiagonal matrix followed by Sturm-sequence bisection.
//! Eigenvectors are not formed; this is the fast path behind `op_norm`
//! and the positivity tests.

use super::matrix::{CMatrix, C64, ZERO};

/// Reduce the (assumed Hermitian) matrix to tridiagonal form. Returns the
/// diagonal and the moduli of the off-diagonal entries; a diagonal phase
/// similarity makes those off-diagonals real without changing the spectrum.
pub(crate) fn tridiagonalize(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.rows();
    let mut a: Vec<C64> = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let xnorm = (lo..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let x0 = a[lo * n + k];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= alpha;
        let vnorm = (lo..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            off[k] = xnorm;
            continue;
        }
        for vi in v[lo..n].iter_mut() {
            *vi /= vnorm;
        }
        // A ← H A H with H = I − 2vv*, on the trailing block (and column k).
        for i in lo..n {
            let mut s = ZERO;
            for j in lo..n {
                s += a[i * n + j] * v[j];
            }
            p[i] = s;
        }
        let kk: f64 = (lo..n).map(|i| (v[i].conj() * p[i]).re).sum();
        for i in lo..n {
            p[i] -= v[i] * kk;
        }
        for i in lo..n {
            for j in lo..n {
                a[i * n + j] -= (v[i] * p[j].conj() + p[i] * v[j].conj()) * 2.0;
            }
        }
        off[k] = xnorm;
        for i in lo..n {
            a[i * n + k] = ZERO;
            a[k * n + i] = ZERO;
        }
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1) * n + (n - 2)].norm();
    }
    let diag = (0..n).map(|i| a[i * n + i].re).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let (d, e) = tridiagonalize(m);
    if n == 1 {
        return d;
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1] } else { 0.0 } + if i + 1 < n { e[i] } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE.max(scale * f64::EPSILON * f64::EPSILON);
    let pad = scale * f64::EPSILON * 4.0 * n as f64;
    lo -= pad;
    hi += pad;
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            // Invariant: count(a) ≤ k < count(b).
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b || b - a <= 2.0 * f64::EPSILON * scale {
                    break;
                }
                if sturm_count(&d, &e, mid, pivmin) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_known_spectrum() {
        let m = CMatrix::from_real(&[
            &[2.0, -1.0, 0.0, 0.0],
            &[-1.0, 2.0, -1.0, 0.0],
            &[0.0, -1.0, 2.0, -1.0],
            &[0.0, 0.0, -1.0, 2.0],
        ]);
        // Path-graph Laplacian: 2 − 2cos(kπ/5)
        let vals = eigenvalues(&m);
        for (k, v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 5.0).cos();
            assert!((v - exact).abs() < 1e-13, "{v} vs {exact}");
        }
    }

    #[test]
    fn complex_entries_and_degeneracy() {
        let i = C64::new(0.0, 1.0);
        // [[0, i], [−i, 0]] ⊕ 1 ⊕ 1 has spectrum (−1, 1, 1, 1)
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 1)] = i;
        m[(1, 0)] = -i;
        m[(2, 2)] = C64::new(1.0, 0.0);
        m[(3, 3)] = C64::new(1.0, 0.0);
        let vals = eigenvalues(&m);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!(vals[1..].iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn agrees_with_jacobi_on_random_hermitian_matrices() {
        let mut rng = crate::sampling::Sampler::new(11);
        for n in [1, 2, 5, 17, 40] {
            let h = rng.hermitian(n);
            let fast = eigenvalues(&h);
            let jac = crate::linalg::herm_eig(&h).unwrap().values;
            for (a, b) in fast.iter().zip(&jac) {
                assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "n={n}: {a} vs {b}");
            }
        }
    }
}
