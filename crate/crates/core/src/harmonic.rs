//! The Plancherel weight of a finite group, scalar and operator-valued
//! Fourier transforms, positive-definite functions and Fourier inversion.
//!
//! On a finite group every vector of `ℓ²(G)` is left bounded, so the weight
//! is simply the vector state at `δ_e`; it agrees with `trace/|G|` on the
//! span of the translations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::groups::{convolve_scalar, involute_scalar, FiniteGroup};
use crate::linalg::{is_psd, psd_sqrt, CMatrix, C64, ZERO};

/// `φ(x) = ⟨δ_e, x δ_e⟩` on `M_{|G|}`.
#[derive(Debug, Clone)]
pub struct PlancherelWeight {
    group: Arc<FiniteGroup>,
    /// `φ(λ_t)` for each `t`
    on_translations: Vec<C64>,
}

impl PlancherelWeight {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let on_translations = group
            .elements()
            .map(|t| group.lambda(t)[(0, 0)])
            .collect();
        PlancherelWeight {
            group,
            on_translations,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn eval(&self, x: &CMatrix) -> Result<C64> {
        let n = self.group.order();
        if x.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "weight of a {:?} matrix on a group of order {n}",
                x.shape()
            )));
        }
        Ok(x[(0, 0)])
    }

    /// Normalized trace; equals `eval` on `span{λ_t}`.
    pub fn trace_form(&self, x: &CMatrix) -> Result<C64> {
        self.eval(x)?;
        Ok(x.trace() / self.group.order() as f64)
    }

    /// `φ(λ_t)`
    pub fn on_translation(&self, t: usize) -> C64 {
        self.on_translations[t]
    }
}

pub fn plancherel(g: &FiniteGroup, x: &CMatrix) -> Result<C64> {
    let n = g.order();
    if x.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "weight of a {:?} matrix on a group of order {n}",
            x.shape()
        )));
    }
    Ok(x[(0, 0)])
}

/// `x̂(t) = φ(λ_{t⁻¹} x)`
pub fn fourier_scalar(g: &FiniteGroup, x: &CMatrix) -> Result<Vec<C64>> {
    g.elements()
        .map(|t| plancherel(g, &g.lambda(g.inv(t)).matmul(x)))
        .collect()
}

fn factor_dim(g: &FiniteGroup, x: &CMatrix) -> Result<usize> {
    let k = g.order();
    if !x.is_square() || !x.rows().is_multiple_of(k) {
        return Err(Error::DimensionMismatch(format!(
            "a {:?} matrix does not factor as M_n ⊗ M_{k}",
            x.shape()
        )));
    }
    Ok(x.rows() / k)
}

/// `(id ⊗ φ)(X) = (I ⊗ ⟨δ_e|) X (I ⊗ |δ_e⟩)`
pub fn slice_plancherel(g: &FiniteGroup, x: &CMatrix) -> Result<CMatrix> {
    let n = factor_dim(g, x)?;
    let k = g.order();
    Ok(CMatrix::from_fn(n, n, |i, j| x[(i * k, j * k)]))
}

/// `â(t) = (id ⊗ φ)((1 ⊗ λ_{t⁻¹}) a)`
pub fn fourier_operator(g: &FiniteGroup, a: &CMatrix, t: usize) -> Result<CMatrix> {
    let n = factor_dim(g, a)?;
    let k = g.order();
    // (1 ⊗ λ_u) sends row (i, s) to row (i, us); with u = t⁻¹ the row that
    // lands on (i, s) is (i, ts).
    let mut shifted = CMatrix::zeros(a.rows(), a.cols());
    for i in 0..n {
        for s in g.elements() {
            let src = i * k + g.mul(t, s);
            let dst = i * k + s;
            let row: Vec<C64> = a.row(src).to_vec();
            for (c, v) in row.into_iter().enumerate() {
                shifted[(dst, c)] = v;
            }
        }
    }
    slice_plancherel(g, &shifted)
}

/// A map `G → M_n`, read as the element `Σ_t f(t) ⊗ λ_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFunction {
    group: Arc<FiniteGroup>,
    dim: usize,
    values: Vec<CMatrix>,
}

impl OperatorFunction {
    pub fn new(group: Arc<FiniteGroup>, dim: usize, values: Vec<CMatrix>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some((t, v)) = values.iter().enumerate().find(|(_, v)| v.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!(
                "value at {t} has shape {:?}, expected {dim}x{dim}",
                v.shape()
            )));
        }
        Ok(OperatorFunction {
            group,
            dim,
            values,
        })
    }

    pub fn zero(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let values = vec![CMatrix::zeros(dim, dim); group.order()];
        OperatorFunction {
            group,
            dim,
            values,
        }
    }

    /// `m` at `t`, zero elsewhere.
    pub fn delta(group: Arc<FiniteGroup>, t: usize, m: CMatrix) -> Self {
        let mut f = OperatorFunction::zero(group, m.rows());
        f.values[t] = m;
        f
    }

    /// A scalar function as a `1 x 1` operator function.
    pub fn scalar(group: Arc<FiniteGroup>, f: &[C64]) -> Self {
        let values = f
            .iter()
            .map(|&z| CMatrix::from_vec(1, 1, vec![z]).expect("1x1"))
            .collect();
        OperatorFunction {
            group,
            dim: 1,
            values,
        }
    }

    /// Fourier coefficients `t ↦ â(t)` of a matrix on `ℂⁿ ⊗ ℂ^G`.
    pub fn from_operator(group: Arc<FiniteGroup>, a: &CMatrix) -> Result<Self> {
        let dim = factor_dim(&group, a)?;
        let values = group
            .elements()
            .map(|t| fourier_operator(&group, a, t))
            .collect::<Result<_>>()?;
        Ok(OperatorFunction {
            group,
            dim,
            values,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, t: usize) -> &CMatrix {
        &self.values[t]
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    pub fn into_values(self) -> Vec<CMatrix> {
        self.values
    }

    /// Elements where the value is not exactly zero.
    pub fn support(&self) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&t| !self.values[t].is_zero())
            .collect()
    }

    /// `λ_A(f) = Σ_t f(t) ⊗ λ_t`
    pub fn lambda_op(&self) -> CMatrix {
        let big = self.dim * self.group.order();
        let mut out = CMatrix::zeros(big, big);
        let k = self.group.order();
        for t in self.group.elements() {
            let v = &self.values[t];
            if v.is_zero() {
                continue;
            }
            for x in 0..k {
                let row = self.group.mul(t, x);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        out[(i * k + row, j * k + x)] += v[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// Product of `Σ f(s)⊗λ_s` and `Σ g(r)⊗λ_r`, which is the convolution
    /// `(f ∗ g)(u) = Σ_{sr=u} f(s) g(r)`.
    pub fn mul(&self, other: &OperatorFunction) -> OperatorFunction {
        assert_eq!(self.dim, other.dim, "operator function dimension mismatch");
        let mut out = OperatorFunction::zero(self.group.clone(), self.dim);
        let ls = self.support();
        let rs = other.support();
        for &s in &ls {
            for &r in &rs {
                let p = self.values[s].matmul(&other.values[r]);
                out.values[self.group.mul(s, r)] += &p;
            }
        }
        out
    }

    /// `f*(t) = Δ(t)⁻¹ f(t⁻¹)*`
    pub fn adjoint(&self) -> OperatorFunction {
        let g = &self.group;
        let values = g
            .elements()
            .map(|t| self.values[g.inv(t)].adjoint().scale_real(1.0 / g.modular(t)))
            .collect();
        OperatorFunction {
            group: self.group.clone(),
            dim: self.dim,
            values,
        }
    }

    /// `(1 ⊗ λ_u) f`, i.e. `t ↦ f(u⁻¹t)`.
    pub fn left_shift(&self, u: usize) -> OperatorFunction {
        let g = &self.group;
        let mut values = vec![CMatrix::zeros(self.dim, self.dim); g.order()];
        for s in g.elements() {
            values[g.mul(u, s)] = self.values[s].clone();
        }
        OperatorFunction {
            group: self.group.clone(),
            dim: self.dim,
            values,
        }
    }

    /// `(id ⊗ φ)(Σ f(t)⊗λ_t) = Σ_t f(t) φ(λ_t)`
    pub fn slice(&self, phi: &PlancherelWeight) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for t in self.group.elements() {
            let w = phi.on_translation(t);
            if w != ZERO {
                out.axpy(w, &self.values[t]);
            }
        }
        out
    }

    /// `(id ⊗ ω)(f)` for a functional given by its values `ω(λ_t)`.
    pub fn slice_with(&self, omega_on_translations: &[C64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for t in self.group.elements() {
            let w = omega_on_translations[t];
            if w != ZERO {
                out.axpy(w, &self.values[t]);
            }
        }
        out
    }

    /// Frobenius norm of `λ_A(f)`: each `λ_t` contributes `|G|`.
    pub fn frobenius(&self) -> f64 {
        let s: f64 = self.values.iter().map(CMatrix::frobenius_sq).sum();
        (s * self.group.order() as f64).sqrt()
    }

    pub fn dist(&self, other: &OperatorFunction) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let d = a.dist(b);
                d * d
            })
            .sum();
        (s * self.group.order() as f64).sqrt()
    }

    pub fn scale(&self, c: C64) -> OperatorFunction {
        OperatorFunction {
            group: self.group.clone(),
            dim: self.dim,
            values: self.values.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn axpy(&mut self, c: C64, other: &OperatorFunction) {
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            if !w.is_zero() {
                v.axpy(c, w);
            }
        }
    }

    pub fn map_values(&self, dim: usize, f: impl Fn(usize, &CMatrix) -> CMatrix) -> Result<Self> {
        let values = self
            .group
            .elements()
            .map(|t| f(t, &self.values[t]))
            .collect();
        OperatorFunction::new(self.group.clone(), dim, values)
    }

    /// Block Gram matrix `(f(s⁻¹t))_{s,t}` over all of `G`.
    pub fn gram_matrix(&self) -> CMatrix {
        let g = &self.group;
        let k = g.order();
        let n = self.dim;
        CMatrix::from_fn(k * n, k * n, |r, c| {
            let (s, i) = (r / n, r % n);
            let (t, j) = (c / n, c % n);
            self.values[g.mul(g.inv(s), t)][(i, j)]
        })
    }
}

pub fn lambda_op(f: &OperatorFunction) -> CMatrix {
    f.lambda_op()
}

/// Positive-definiteness: the single block Gram matrix over `G` is PSD.
pub fn is_positive_definite(f: &OperatorFunction, tol: f64) -> Result<bool> {
    is_psd(&f.gram_matrix(), tol)
}

/// Compare `a` with its reassembly `Σ_t â(t) ⊗ λ_t`.
pub fn inversion_check(g: &Arc<FiniteGroup>, a: &CMatrix, tol: f64) -> Result<Certificate> {
    let f = OperatorFunction::from_operator(g.clone(), a)?;
    let defect = a.dist(&f.lambda_op());
    let mut cert = Certificate::new("inversion");
    cert.anchor("operator-fourier-inversion");
    cert.info("projection_defect", defect);
    if defect <= tol * (1.0 + a.frobenius()) {
        cert.info("classification", "inside reassembly span");
        cert.check("reassembly", defect, tol * (1.0 + a.frobenius()));
    } else {
        cert.info("classification", "outside reassembly span");
        cert.note("input is not of the form Σ_t f(t)⊗λ_t; inversion applies only on that span");
    }
    Ok(cert)
}

/// Square-root factorization of a scalar function with `λ(f) ≥ 0`: reads
/// `ξ` off the positive square root and returns it with the residuals of
/// `λ(ξ) = λ(f)^{1/2}` and `f = ξ* ∗ ξ`.
pub fn square_root_factorization(g: &FiniteGroup, f: &[C64]) -> Result<(Vec<C64>, f64, f64)> {
    let lf = g.lambda_of(f);
    let root = psd_sqrt(&lf)?;
    let xi = fourier_scalar(g, &root)?;
    let root_res = g.lambda_of(&xi).dist(&root);
    let back = convolve_scalar(g, &involute_scalar(g, &xi), &xi);
    let conv_res = back
        .iter()
        .zip(f)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((xi, root_res, conv_res))
}

/// JSON form: `{"group": ref, "dim": n, "values": {"t": matrix}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorFunctionJson {
    pub group: serde_json::Value,
    pub dim: usize,
    pub values: std::collections::BTreeMap<String, CMatrix>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;
    use crate::linalg::ONE;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(cyclic(2).unwrap())
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn weight_examples() {
        let g = c2();
        assert_eq!(plancherel(&g, &CMatrix::identity(2)).unwrap(), ONE);
        assert_eq!(plancherel(&g, &g.lambda(1)).unwrap(), ZERO);
        let x = CMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert_eq!(plancherel(&g, &x).unwrap(), c(2.0));
        assert!(plancherel(&g, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn scalar_transform_of_translations() {
        let g = Arc::new(cyclic(3).unwrap());
        for s in g.elements() {
            let hat = fourier_scalar(&g, &g.lambda(s)).unwrap();
            for t in g.elements() {
                assert_eq!(hat[t], if s == t { ONE } else { ZERO });
            }
        }
    }

    #[test]
    fn lambda_op_of_scalar_function() {
        let f = OperatorFunction::scalar(c2(), &[c(2.0), c(1.0)]);
        assert_eq!(f.lambda_op(), CMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]));
        assert!(is_positive_definite(&f, 1e-9).unwrap());
        let h = OperatorFunction::scalar(c2(), &[c(1.0), c(2.0)]);
        assert!(!is_positive_definite(&h, 1e-9).unwrap());
    }

    #[test]
    fn fourier_operator_of_elementary_tensor() {
        let g = Arc::new(cyclic(3).unwrap());
        let b = CMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let a = b.kron(&g.lambda(2));
        for t in g.elements() {
            let hat = fourier_operator(&g, &a, t).unwrap();
            if t == 2 {
                assert_eq!(hat, b);
            } else {
                assert!(hat.is_zero());
            }
        }
    }

    #[test]
    fn matrix_unit_is_outside_reassembly_span() {
        let g = c2();
        let b = CMatrix::identity(1);
        let a = b.kron(&CMatrix::unit(2, 2, 0, 0));
        let cert = inversion_check(&g, &a, 1e-9).unwrap();
        assert_eq!(cert.informational["classification"], "outside reassembly span");
        assert!((cert.informational["projection_defect"].as_f64().unwrap() - 1.0).abs() < 1e-15);
        let zero = inversion_check(&g, &CMatrix::zeros(2, 2), 1e-9).unwrap();
        assert_eq!(zero.residual("reassembly"), Some(0.0));
    }
}
