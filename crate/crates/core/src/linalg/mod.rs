//! Dense complex linear algebra: matrices, Hermitian spectra, kernels and
//! subspaces of matrix spaces under the Hilbert–Schmidt inner product.

mod eig;
mod matrix;
mod subspace;
mod svd;
mod tridiag;

pub use eig::{herm_eig, herm_eigenvalues, is_psd, op_norm, psd_margin, psd_sqrt, HermEig};
pub use matrix::{kron, CMatrix, C64, I, ONE, ZERO};
pub use subspace::{
    solve_nullspace, span_orthonormalize, span_orthonormalize_tracked, subspace_contains,
    subspace_equal, Subspace, Tracked,
};
pub use svd::{kernel_of_columns, rank_of_columns, svd_columns, Svd};

/// Default absolute tolerance, scaled by `1 + ‖operand‖` at each use.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Singular values below `RANK_TOL · σ_max` count as zero.
pub const RANK_TOL: f64 = 1e-9;

/// Gram–Schmidt drops a vector whose residual is at most this fraction of its norm.
pub const DROP_TOL: f64 = 1e-10;

/// Relative comparison `|a − b| / max(1, |a|, |b|)`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Euclidean norm of a coordinate vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn vec_inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Euclidean distance between coordinate vectors.
pub fn vec_dist(u: &[C64], v: &[C64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
