//! A finite-dimensional *-subalgebra of `M_d` in coordinates: structure
//! constants and the adjoint over an HS-orthonormal basis. Products of
//! algebra elements are then `O(dim³)` instead of `O(d³)`.

use crate::error::{Error, Result};
use crate::linalg::{vec_norm, CMatrix, Subspace, C64, ZERO};

#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    basis: Subspace,
    /// `mult[k * dim + l]` = coordinates of `a_k a_l`
    mult: Vec<Vec<C64>>,
    /// `star[k]` = coordinates of `a_k*`
    star: Vec<Vec<C64>>,
    /// sparsity pattern: `mult_nz[k * dim + l]` lists nonzero coordinates
    mult_nz: Vec<Vec<(usize, C64)>>,
    closure_defect: f64,
    adjoint_defect: f64,
}

impl MatrixAlgebra {
    /// Build the structure constants. Products or adjoints that leave the
    /// span are projected back and the worst relative defect is kept.
    pub fn new(basis: Subspace) -> Result<Self> {
        let (d, d2) = basis.shape();
        if d != d2 {
            return Err(Error::DimensionMismatch("algebra of non-square matrices".into()));
        }
        let dim = basis.dim();
        let mats = basis.basis_vec();
        let mut mult = Vec::with_capacity(dim * dim);
        let mut closure_defect = 0.0f64;
        for x in &mats {
            for y in &mats {
                let p = x.matmul(y);
                let c = basis.coords(&p)?;
                let back = basis.combine(&c);
                closure_defect = closure_defect.max(p.dist(&back) / (1.0 + p.frobenius()));
                mult.push(c);
            }
        }
        let mut star = Vec::with_capacity(dim);
        let mut adjoint_defect = 0.0f64;
        for x in &mats {
            let xs = x.adjoint();
            let c = basis.coords(&xs)?;
            adjoint_defect = adjoint_defect.max(xs.dist(&basis.combine(&c)) / (1.0 + xs.frobenius()));
            star.push(c);
        }
        let mult_nz = mult
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm() > 0.0)
                    .map(|(i, &z)| (i, z))
                    .collect()
            })
            .collect();
        Ok(MatrixAlgebra {
            basis,
            mult,
            star,
            mult_nz,
            closure_defect,
            adjoint_defect,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Size `d` of the ambient `M_d`.
    pub fn ambient(&self) -> usize {
        self.basis.shape().0
    }

    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn closure_defect(&self) -> f64 {
        self.closure_defect
    }

    pub fn adjoint_defect(&self) -> f64 {
        self.adjoint_defect
    }

    pub fn coords(&self, m: &CMatrix) -> Result<Vec<C64>> {
        self.basis.coords(m)
    }

    /// Coordinates of `m`, or `NotInAlgebra` if it is not in the span.
    pub fn coords_checked(&self, m: &CMatrix, tol: f64) -> Result<Vec<C64>> {
        let c = self.basis.coords(m)?;
        let defect = m.dist(&self.basis.combine(&c));
        if defect > tol * (1.0 + m.frobenius()) {
            return Err(Error::NotInAlgebra(defect));
        }
        Ok(c)
    }

    /// Relative distance of `m` from the algebra.
    pub fn membership_defect(&self, m: &CMatrix) -> Result<f64> {
        Ok(self.basis.residual(m)? / (1.0 + m.frobenius()))
    }

    pub fn element(&self, c: &[C64]) -> CMatrix {
        self.basis.combine(c)
    }

    pub fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let dim = self.dim();
        let mut out = vec![ZERO; dim];
        for (k, &xk) in x.iter().enumerate() {
            if xk == ZERO {
                continue;
            }
            for (l, &yl) in y.iter().enumerate() {
                if yl == ZERO {
                    continue;
                }
                let s = xk * yl;
                for &(m, c) in &self.mult_nz[k * dim + l] {
                    out[m] += s * c;
                }
            }
        }
        out
    }

    /// Coordinates of `a_k a_l`.
    pub fn basis_product(&self, k: usize, l: usize) -> &[C64] {
        &self.mult[k * self.dim() + l]
    }

    pub fn adjoint(&self, x: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim()];
        for (k, &xk) in x.iter().enumerate() {
            if xk == ZERO {
                continue;
            }
            let c = xk.conj();
            for (o, s) in out.iter_mut().zip(&self.star[k]) {
                *o += c * s;
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` in coordinates; a faithful
    /// *-representation, so its norm is the C*-norm of `x`.
    pub fn left_regular(&self, x: &[C64]) -> CMatrix {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for l in 0..dim {
            let mut e = vec![ZERO; dim];
            e[l] = C64::new(1.0, 0.0);
            let col = self.mul(x, &e);
            for (k, v) in col.into_iter().enumerate() {
                m[(k, l)] = v;
            }
        }
        m
    }
}

/// Euclidean norm of coordinates; the Frobenius norm of the element.
pub fn coord_norm(c: &[C64]) -> f64 {
    vec_norm(c)
}
