//! Subspaces of a matrix space, held as Hilbert–Schmidt orthonormal bases.
//!
//! Shapes are arbitrary `rows x cols`, so the same type carries fibers in
//! `M_n` and kernels of linear maps (column vectors, `k x 1`).

use super::matrix::{CMatrix, C64, ZERO};
use super::svd::kernel_of_columns;
use super::{vec_norm, DROP_TOL};
use crate::error::{Error, Result};

/// A basis element together with the positions of its nonzero entries when
/// it is sparse enough for index-driven inner products to pay off.
#[derive(Debug, Clone, PartialEq)]
struct Element {
    mat: CMatrix,
    support: Option<Vec<u32>>,
}

impl Element {
    fn new(mat: CMatrix) -> Self {
        let nnz = mat.as_slice().iter().filter(|z| !is_exact_zero(**z)).count();
        let support = (nnz * 4 < mat.as_slice().len()).then(|| {
            mat.as_slice()
                .iter()
                .enumerate()
                .filter(|(_, z)| !is_exact_zero(**z))
                .map(|(i, _)| i as u32)
                .collect()
        });
        Element { mat, support }
    }

    /// `⟨self, m⟩`
    fn inner(&self, m: &[C64]) -> C64 {
        let data = self.mat.as_slice();
        match &self.support {
            Some(idx) => idx
                .iter()
                .map(|&i| data[i as usize].conj() * m[i as usize])
                .sum(),
            None => data.iter().zip(m).map(|(a, b)| a.conj() * b).sum(),
        }
    }

    /// `out += s · self`
    fn add_scaled_to(&self, s: C64, out: &mut [C64]) {
        let data = self.mat.as_slice();
        match &self.support {
            Some(idx) => {
                for &i in idx {
                    out[i as usize] += s * data[i as usize];
                }
            }
            None => {
                for (o, d) in out.iter_mut().zip(data) {
                    *o += s * d;
                }
            }
        }
    }
}

fn is_exact_zero(z: C64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Orthonormal basis of a subspace of `rows x cols` complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    shape: (usize, usize),
    basis: Vec<Element>,
}

/// Result of a tracked orthonormalization: `basis[k] = Σ_j coeffs[k][j]·input[j]`.
#[derive(Debug, Clone)]
pub struct Tracked {
    pub subspace: Subspace,
    pub coeffs: Vec<Vec<C64>>,
    /// Indices of inputs that contributed a new direction.
    pub kept: Vec<usize>,
}

impl Subspace {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Subspace {
            shape: (rows, cols),
            basis: Vec::new(),
        }
    }

    /// Whole space `M_{rows x cols}` with the matrix-unit basis.
    pub fn full(rows: usize, cols: usize) -> Self {
        let mut basis = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                basis.push(Element::new(CMatrix::unit(rows, cols, i, j)));
            }
        }
        Subspace {
            shape: (rows, cols),
            basis,
        }
    }

    /// Span of `mats` (Gram–Schmidt with reorthogonalization).
    pub fn span(rows: usize, cols: usize, mats: &[CMatrix]) -> Result<Self> {
        Ok(orthonormalize(rows, cols, mats, false)?.subspace)
    }

    /// Wrap vectors already known to be orthonormal (e.g. right singular
    /// vectors) as a subspace of column vectors.
    pub(crate) fn from_orthonormal_vectors(len: usize, vecs: Vec<Vec<C64>>) -> Self {
        let basis = vecs
            .into_iter()
            .map(|v| Element::new(CMatrix::column(&v)))
            .collect();
        Subspace {
            shape: (len, 1),
            basis,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> impl ExactSizeIterator<Item = &CMatrix> + '_ {
        self.basis.iter().map(|e| &e.mat)
    }

    pub fn basis_vec(&self) -> Vec<CMatrix> {
        self.basis().cloned().collect()
    }

    pub fn element(&self, k: usize) -> &CMatrix {
        &self.basis[k].mat
    }

    fn check_shape(&self, m: &CMatrix) -> Result<()> {
        if m.shape() != self.shape {
            return Err(Error::DimensionMismatch(format!(
                "matrix of shape {:?} against a subspace of {:?}",
                m.shape(),
                self.shape
            )));
        }
        Ok(())
    }

    /// Coordinates `⟨q_k, m⟩` in the orthonormal basis.
    pub fn coords(&self, m: &CMatrix) -> Result<Vec<C64>> {
        self.check_shape(m)?;
        Ok(self.basis.iter().map(|e| e.inner(m.as_slice())).collect())
    }

    /// `Σ_k c_k q_k`
    pub fn combine(&self, c: &[C64]) -> CMatrix {
        assert_eq!(c.len(), self.dim(), "coordinate length mismatch");
        let mut out = vec![ZERO; self.shape.0 * self.shape.1];
        for (e, &ck) in self.basis.iter().zip(c) {
            if !is_exact_zero(ck) {
                e.add_scaled_to(ck, &mut out);
            }
        }
        CMatrix::from_vec(self.shape.0, self.shape.1, out).expect("shape is consistent")
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, m: &CMatrix) -> Result<CMatrix> {
        let c = self.coords(m)?;
        Ok(self.combine(&c))
    }

    /// `‖m − P m‖_F`
    pub fn residual(&self, m: &CMatrix) -> Result<f64> {
        let c = self.coords(m)?;
        // Pythagoras loses digits near zero; subtract explicitly.
        Ok(m.dist(&self.combine(&c)))
    }

    /// Containment with the relative test `residual ≤ tol·(1 + ‖m‖_F)`.
    pub fn contains(&self, m: &CMatrix, tol: f64) -> Result<bool> {
        Ok(self.residual(m)? <= tol * (1.0 + m.frobenius()))
    }

    /// Largest relative residual of `other`'s basis in `self`.
    pub fn containment_defect(&self, other: &Subspace) -> Result<f64> {
        if other.shape != self.shape {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        let mut worst = 0.0f64;
        for q in other.basis() {
            worst = worst.max(self.residual(q)? / (1.0 + q.frobenius()));
        }
        Ok(worst)
    }

    /// Symmetric containment defect; zero iff the subspaces coincide.
    pub fn equality_defect(&self, other: &Subspace) -> Result<f64> {
        Ok(self
            .containment_defect(other)?
            .max(other.containment_defect(self)?))
    }

    pub fn equals(&self, other: &Subspace, tol: f64) -> Result<bool> {
        Ok(self.equality_defect(other)? <= tol)
    }

    /// `self ∩ other`: the combinations `Σ c_i u_i` of this basis whose
    /// component orthogonal to `other` vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if other.shape != self.shape {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.shape.0, self.shape.1));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for u in self.basis() {
            let p = other.project(u)?;
            cols.push((u - &p).into_vec());
        }
        let ker = kernel_of_columns(&cols)?;
        // The kernel vectors are orthonormal and the u_i are orthonormal,
        // so the combinations are already an orthonormal basis.
        let basis = ker
            .iter()
            .map(|c| Element::new(self.combine(c)))
            .collect();
        Ok(Subspace {
            shape: self.shape,
            basis,
        })
    }

    /// `self + other`
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if other.shape != self.shape {
            return Err(Error::DimensionMismatch("sum of subspaces of different shapes".into()));
        }
        let mats: Vec<CMatrix> = self.basis().chain(other.basis()).cloned().collect();
        Subspace::span(self.shape.0, self.shape.1, &mats)
    }

    /// Span of the adjoints of the basis. Adjoints of an HS-orthonormal
    /// family stay orthonormal, so no re-orthonormalization is needed.
    pub fn adjoint(&self) -> Subspace {
        Subspace {
            shape: (self.shape.1, self.shape.0),
            basis: self
                .basis()
                .map(|q| Element::new(q.adjoint()))
                .collect(),
        }
    }

    /// Span of `f(q)` over the basis.
    pub fn image(&self, rows: usize, cols: usize, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Subspace> {
        let mats: Vec<CMatrix> = self.basis().map(f).collect();
        Subspace::span(rows, cols, &mats)
    }
}

/// Gram–Schmidt orthonormalization of `mats` under the HS inner product.
pub fn span_orthonormalize(rows: usize, cols: usize, mats: &[CMatrix]) -> Result<Subspace> {
    Subspace::span(rows, cols, mats)
}

/// As [`span_orthonormalize`], also returning each basis vector as a
/// combination of the inputs.
pub fn span_orthonormalize_tracked(rows: usize, cols: usize, mats: &[CMatrix]) -> Result<Tracked> {
    orthonormalize(rows, cols, mats, true)
}

fn orthonormalize(rows: usize, cols: usize, mats: &[CMatrix], track: bool) -> Result<Tracked> {
    let mut basis: Vec<Element> = Vec::new();
    let mut coeffs: Vec<Vec<C64>> = Vec::new();
    let mut kept = Vec::new();
    let k = mats.len();
    for (j, m) in mats.iter().enumerate() {
        if m.shape() != (rows, cols) {
            return Err(Error::DimensionMismatch(format!(
                "matrix {j} has shape {:?}, expected {:?}",
                m.shape(),
                (rows, cols)
            )));
        }
        let norm0 = m.frobenius();
        if norm0 == 0.0 {
            continue;
        }
        let mut v = m.as_slice().to_vec();
        let mut c = if track {
            let mut c = vec![ZERO; k];
            c[j] = C64::new(1.0, 0.0);
            c
        } else {
            Vec::new()
        };
        for _pass in 0..2 {
            for (bi, q) in basis.iter().enumerate() {
                let h = q.inner(&v);
                if is_exact_zero(h) {
                    continue;
                }
                q.add_scaled_to(-h, &mut v);
                if track {
                    for (cj, qc) in c.iter_mut().zip(&coeffs[bi]) {
                        *cj -= h * qc;
                    }
                }
            }
        }
        let r = vec_norm(&v);
        if r <= DROP_TOL * norm0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= r;
        }
        if track {
            for z in c.iter_mut() {
                *z /= r;
            }
            coeffs.push(c);
        }
        basis.push(Element::new(CMatrix::from_vec(rows, cols, v)?));
        kept.push(j);
    }
    Ok(Tracked {
        subspace: Subspace {
            shape: (rows, cols),
            basis,
        },
        coeffs,
        kept,
    })
}

pub fn subspace_contains(s: &Subspace, m: &CMatrix, tol: f64) -> Result<bool> {
    s.contains(m, tol)
}

pub fn subspace_equal(s1: &Subspace, s2: &Subspace, tol: f64) -> Result<bool> {
    s1.equals(s2, tol)
}

/// Kernel of `map` (acting on column vectors) as a subspace of `cols x 1`
/// vectors, at relative singular-value threshold `RANK_TOL`.
pub fn solve_nullspace(map: &CMatrix) -> Result<Subspace> {
    let cols: Vec<Vec<C64>> = (0..map.cols()).map(|j| map.col(j)).collect();
    let ker = kernel_of_columns(&cols)?;
    Ok(Subspace::from_orthonormal_vectors(map.cols(), ker))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> CMatrix {
        CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn collinear_and_independent_spans() {
        let id = CMatrix::identity(2);
        let s = span_orthonormalize(2, 2, &[id.clone(), id.scale_real(2.0)]).unwrap();
        assert_eq!(s.dim(), 1);
        let s = span_orthonormalize(2, 2, &[id.clone(), swap()]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(span_orthonormalize(2, 2, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn containment_examples() {
        let id = CMatrix::identity(2);
        let s = Subspace::span(2, 2, std::slice::from_ref(&id)).unwrap();
        assert!(s.contains(&id.scale_real(3.0), 1e-9).unwrap());
        assert!(!s.contains(&swap(), 1e-9).unwrap());
        let a = Subspace::span(2, 2, &[id.clone(), swap()]).unwrap();
        let b = Subspace::span(2, 2, &[&id + &swap(), &id - &swap()]).unwrap();
        assert!(a.equals(&b, 1e-9).unwrap());
        assert!(matches!(
            s.contains(&CMatrix::identity(3), 1e-9),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(solve_nullspace(&CMatrix::zeros(3, 3)).unwrap().dim(), 3);
        assert_eq!(solve_nullspace(&CMatrix::identity(3)).unwrap().dim(), 0);
        let k = solve_nullspace(&(&swap() - &CMatrix::identity(2))).unwrap();
        assert_eq!(k.dim(), 1);
        let v = k.element(0);
        assert!((v[(0, 0)] - v[(1, 0)]).norm() < 1e-12);
    }

    #[test]
    fn tracked_coefficients_reproduce_basis() {
        let mats = vec![
            CMatrix::from_real(&[&[1.0, 2.0], &[0.0, 1.0]]),
            CMatrix::from_real(&[&[2.0, 4.0], &[0.0, 2.0]]),
            CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]),
        ];
        let t = span_orthonormalize_tracked(2, 2, &mats).unwrap();
        assert_eq!(t.kept, vec![0, 2]);
        for (q, c) in t.subspace.basis().zip(&t.coeffs) {
            let mut acc = CMatrix::zeros(2, 2);
            for (m, &cj) in mats.iter().zip(c) {
                acc.axpy(cj, m);
            }
            assert!(acc.dist(q) < 1e-13);
        }
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let e = |i, j| CMatrix::unit(2, 2, i, j);
        let a = Subspace::span(2, 2, &[e(0, 0), e(0, 1)]).unwrap();
        let b = Subspace::span(2, 2, &[e(0, 1), e(1, 1)]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&e(0, 1), 1e-12).unwrap());
        let d = Subspace::span(2, 2, &[e(1, 0)]).unwrap();
        assert_eq!(a.intersect(&d).unwrap().dim(), 0);
    }
}
