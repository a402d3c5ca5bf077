//! One-sided (Hestenes) Jacobi SVD. Used for ranks and kernels, where the
//! singular values must be resolved to `eps·σ_max` rather than the
//! `sqrt(eps)` a Gram-matrix route would give.

use super::matrix::{CMatrix, C64};
use super::RANK_TOL;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct Svd {
    /// Singular values, one per column of the input, descending.
    pub values: Vec<f64>,
    /// Right singular vectors as columns (unitary, cols x cols).
    pub right: CMatrix,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rel · σ_max`.
    pub fn rank(&self, rel: f64) -> usize {
        let cut = rel * self.max();
        if self.max() == 0.0 {
            return 0;
        }
        self.values.iter().filter(|&&s| s > cut).count()
    }

    /// Right singular vectors whose singular value is at most `rel · σ_max`.
    pub fn kernel(&self, rel: f64) -> Vec<Vec<C64>> {
        let cut = rel * self.max();
        (0..self.values.len())
            .filter(|&j| self.max() == 0.0 || self.values[j] <= cut)
            .map(|j| self.right.col(j))
            .collect()
    }
}

/// SVD of the matrix whose columns are `columns` (all the same length).
pub fn svd_columns(columns: &[Vec<C64>]) -> Result<Svd> {
    let k = columns.len();
    let len = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != len) {
        return Err(Error::DimensionMismatch("columns of unequal length".into()));
    }
    let mut cols: Vec<Vec<C64>> = columns.to_vec();
    let mut v = CMatrix::identity(k);
    let mut norms: Vec<f64> = cols.iter().map(|c| sq_norm(c)).collect();
    let total: f64 = norms.iter().sum();

    let mut converged = k <= 1 || total == 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        converged = true;
        for i in 0..k {
            for j in (i + 1)..k {
                let alpha = norms[i];
                let beta = norms[j];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: C64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let g = gamma.norm();
                if g <= 1e-14 * (alpha * beta).sqrt() || g <= 1e-30 * total {
                    continue;
                }
                converged = false;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let se = phase * s;
                let se_bar = se.conj();
                let (left, right) = cols.split_at_mut(j);
                let ci = &mut left[i];
                let cj = &mut right[0];
                for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
                    let (xi, yj) = (*x, *y);
                    *x = xi * c - yj * se_bar;
                    *y = xi * se + yj * c;
                }
                norms[i] = sq_norm(ci);
                norms[j] = sq_norm(cj);
                for r in 0..k {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)];
                    v[(r, i)] = vi * c - vj * se_bar;
                    v[(r, j)] = vi * se + vj * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let sv: Vec<f64> = norms.iter().map(|n| n.sqrt()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    Ok(Svd {
        values: order.iter().map(|&j| sv[j]).collect(),
        right: CMatrix::from_fn(k, k, |r, c| v[(r, order[c])]),
    })
}

fn sq_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Orthonormal basis (as vectors) of the kernel of a linear map given by
/// its column images, at the global rank threshold.
pub fn kernel_of_columns(columns: &[Vec<C64>]) -> Result<Vec<Vec<C64>>> {
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    Ok(svd_columns(columns)?.kernel(RANK_TOL))
}

/// Rank of the span of `columns` at the global rank threshold.
pub fn rank_of_columns(columns: &[Vec<C64>]) -> Result<usize> {
    if columns.is_empty() {
        return Ok(0);
    }
    Ok(svd_columns(columns)?.rank(RANK_TOL))
}

#[cfg(test)]
fn columns_of(m: &CMatrix) -> Vec<Vec<C64>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;

    #[test]
    fn singular_values_of_diagonal() {
        let m = CMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(0.0, -1.0), ZERO]);
        let s = svd_columns(&columns_of(&m)).unwrap();
        assert!((s.values[0] - 3.0).abs() < 1e-14);
        assert!((s.values[1] - 1.0).abs() < 1e-14);
        assert_eq!(s.values[2], 0.0);
        assert_eq!(s.rank(RANK_TOL), 2);
    }

    #[test]
    fn rank_deficient_complex_matrix() {
        // third column = (1+i)·first − 2·second
        let a = vec![C64::new(1.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, 1.0)];
        let b = vec![C64::new(0.0, 1.0), C64::new(1.0, 0.0), C64::new(-1.0, 0.0)];
        let c: Vec<C64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * C64::new(1.0, 1.0) - y * 2.0)
            .collect();
        let s = svd_columns(&[a, b, c]).unwrap();
        assert_eq!(s.rank(RANK_TOL), 2);
        let ker = s.kernel(RANK_TOL);
        assert_eq!(ker.len(), 1);
    }
}
