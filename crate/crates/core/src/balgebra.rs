//! The section *-algebra of a Fell bundle, its regular representation and
//! the concrete algebra `ρ(C_c(B)) ⊆ M_n ⊗ M_{|G|}` with `ρ(ξ) = Σ_t ξ(t)⊗λ_t`.
//!
//! For finite (hence amenable) groups the full and reduced section algebras
//! coincide, so the algebra is only ever built as the image of `ρ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::MatrixAlgebra;
use crate::bundle::FellBundle;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{
    op_norm, span_orthonormalize_tracked, CMatrix, Subspace, C64, DEFAULT_TOL, ZERO,
};
use crate::sampling::Sampler;

/// A section `t ↦ ξ(t) ∈ B_t`.
#[derive(Debug, Clone)]
pub struct Section {
    bundle: Arc<FellBundle>,
    values: Vec<CMatrix>,
}

impl Section {
    /// Fails with `FiberViolation` if some value leaves its fiber.
    pub fn new(bundle: Arc<FellBundle>, values: Vec<CMatrix>) -> Result<Self> {
        let n = bundle.ambient_dim();
        if values.len() != bundle.group().order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                bundle.group().order()
            )));
        }
        for (t, v) in values.iter().enumerate() {
            if v.shape() != (n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "value at {t} has shape {:?}, expected {n}x{n}",
                    v.shape()
                )));
            }
            let r = bundle.fiber(t).residual(v)?;
            if r > DEFAULT_TOL * (1.0 + v.frobenius()) {
                return Err(Error::FiberViolation(t, r));
            }
        }
        Ok(Section { bundle, values })
    }

    pub fn zero(bundle: Arc<FellBundle>) -> Self {
        let n = bundle.ambient_dim();
        let values = vec![CMatrix::zeros(n, n); bundle.group().order()];
        Section { bundle, values }
    }

    /// `b` at `t`, zero elsewhere.
    pub fn delta(bundle: Arc<FellBundle>, t: usize, b: CMatrix) -> Result<Self> {
        let mut values = Section::zero(bundle.clone()).values;
        if t >= values.len() {
            return Err(Error::InvalidInput(format!("group element {t} out of range")));
        }
        values[t] = b;
        Section::new(bundle, values)
    }

    /// Section with the given coordinates in each fiber's orthonormal basis.
    pub fn from_coords(bundle: Arc<FellBundle>, coords: &[Vec<C64>]) -> Result<Self> {
        if coords.len() != bundle.group().order() {
            return Err(Error::DimensionMismatch("one coordinate vector per group element".into()));
        }
        let mut values = Vec::with_capacity(coords.len());
        for (t, c) in coords.iter().enumerate() {
            let fiber = bundle.fiber(t);
            if c.len() != fiber.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "fiber {t} has dimension {}, got {} coordinates",
                    fiber.dim(),
                    c.len()
                )));
            }
            values.push(fiber.combine(c));
        }
        Ok(Section { bundle, values })
    }

    /// Uniformly random fiber coordinates.
    pub fn random(bundle: Arc<FellBundle>, rng: &mut Sampler) -> Self {
        let coords: Vec<Vec<C64>> = bundle
            .fibers()
            .iter()
            .map(|f| rng.vector(f.dim()))
            .collect();
        Section::from_coords(bundle, &coords).expect("coordinates match fibers")
    }

    pub fn bundle(&self) -> &Arc<FellBundle> {
        &self.bundle
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.bundle.group()
    }

    pub fn value(&self, t: usize) -> &CMatrix {
        &self.values[t]
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    /// Coordinates of each value in its fiber basis.
    pub fn coords(&self) -> Vec<Vec<C64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(t, v)| self.bundle.fiber(t).coords(v).expect("shape checked"))
            .collect()
    }

    /// Pointwise `t ↦ f(t)·ξ(t)`.
    pub fn pointwise(&self, f: &[C64]) -> Section {
        let values = self
            .values
            .iter()
            .zip(f)
            .map(|(v, &z)| v.scale(z))
            .collect();
        Section {
            bundle: self.bundle.clone(),
            values,
        }
    }

    pub fn add(&self, other: &Section) -> Result<Section> {
        same_bundle(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Section {
            bundle: self.bundle.clone(),
            values,
        })
    }

    pub fn dist(&self, other: &Section) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.dist(b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

fn same_bundle(a: &Section, b: &Section) -> Result<()> {
    if Arc::ptr_eq(&a.bundle, &b.bundle) {
        Ok(())
    } else {
        Err(Error::BundleMismatch)
    }
}

/// `(ξ∗η)(t) = Σ_s ξ(s) η(s⁻¹t)`
pub fn convolve(xi: &Section, eta: &Section) -> Result<Section> {
    same_bundle(xi, eta)?;
    let g = xi.group();
    let n = xi.bundle.ambient_dim();
    let mut values = vec![CMatrix::zeros(n, n); g.order()];
    for s in g.elements() {
        if xi.values[s].is_zero() {
            continue;
        }
        for r in g.elements() {
            if eta.values[r].is_zero() {
                continue;
            }
            values[g.mul(s, r)] += &xi.values[s].matmul(&eta.values[r]);
        }
    }
    Section::new(xi.bundle.clone(), values)
}

/// `ξ*(t) = Δ(t)⁻¹ ξ(t⁻¹)*`
pub fn involute(xi: &Section) -> Result<Section> {
    let g = xi.group();
    let values = g
        .elements()
        .map(|t| xi.values[g.inv(t)].adjoint().scale_real(1.0 / g.modular(t)))
        .collect();
    Section::new(xi.bundle.clone(), values)
}

/// `Σ_t ‖ξ(t)‖`
pub fn l1_norm(xi: &Section) -> Result<f64> {
    xi.values.iter().map(op_norm).sum()
}

/// `Σ_t ξ(t)* η(t) ∈ B_e`
pub fn l2_inner(xi: &Section, eta: &Section) -> Result<CMatrix> {
    same_bundle(xi, eta)?;
    let n = xi.bundle.ambient_dim();
    let mut out = CMatrix::zeros(n, n);
    for (a, b) in xi.values.iter().zip(&eta.values) {
        out += &a.adjoint().matmul(b);
    }
    Ok(out)
}

/// `ρ(ξ) = Σ_t ξ(t) ⊗ λ_t` on `ℂⁿ ⊗ ℂ^G`.
pub fn coaction_embedding(xi: &Section) -> CMatrix {
    let g = xi.group();
    let n = xi.bundle.ambient_dim();
    let k = g.order();
    let mut out = CMatrix::zeros(n * k, n * k);
    for t in g.elements() {
        let v = &xi.values[t];
        if v.is_zero() {
            continue;
        }
        for x in 0..k {
            let row = g.mul(t, x);
            for i in 0..n {
                for j in 0..n {
                    out[(i * k + row, j * k + x)] = v[(i, j)];
                }
            }
        }
    }
    out
}

/// The space `H_B = {w : w(s) ∈ range(B_s)} ⊆ ⊕_s ℂⁿ` carrying the regular
/// representation, with an orthonormal basis in `s`-major coordinates.
#[derive(Debug, Clone)]
pub struct RegularModel {
    bundle: Arc<FellBundle>,
    /// columns: orthonormal basis of `H_B`, index `s·n + i`
    basis: CMatrix,
}

impl RegularModel {
    pub fn new(bundle: Arc<FellBundle>) -> Result<Self> {
        let n = bundle.ambient_dim();
        let k = bundle.group().order();
        let mut columns = Vec::new();
        for s in 0..k {
            let mut cols = Vec::new();
            for b in bundle.fiber(s).basis() {
                for j in 0..n {
                    cols.push(CMatrix::column(&b.col(j)));
                }
            }
            let range = Subspace::span(n, 1, &cols)?;
            for v in range.basis() {
                let mut w = vec![ZERO; n * k];
                w[s * n..(s + 1) * n].copy_from_slice(v.as_slice());
                columns.push(w);
            }
        }
        let h = columns.len();
        let basis = CMatrix::from_fn(n * k, h, |r, c| columns[c][r]);
        Ok(RegularModel { bundle, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Orthonormal basis of `H_B` as columns of an `n|G| x dim` isometry.
    pub fn isometry(&self) -> &CMatrix {
        &self.basis
    }

    /// `λ_B(ξ)` on all of `⊕_s ℂⁿ`: `(λ_B(ξ)w)(s) = Σ_t ξ(t) w(t⁻¹s)`.
    pub fn full_operator(&self, xi: &Section) -> CMatrix {
        let g = self.bundle.group();
        let n = self.bundle.ambient_dim();
        let k = g.order();
        let mut l = CMatrix::zeros(n * k, n * k);
        for t in g.elements() {
            let v = xi.value(t);
            if v.is_zero() {
                continue;
            }
            for r in g.elements() {
                let s = g.mul(t, r);
                for i in 0..n {
                    for j in 0..n {
                        l[(s * n + i, r * n + j)] = v[(i, j)];
                    }
                }
            }
        }
        l
    }

    /// `λ_B(ξ)` compressed to `H_B`.
    pub fn operator(&self, xi: &Section) -> Result<CMatrix> {
        if !Arc::ptr_eq(&self.bundle, xi.bundle()) {
            return Err(Error::BundleMismatch);
        }
        let l = self.full_operator(xi);
        Ok(self.basis.adjoint().matmul(&l.matmul(&self.basis)))
    }
}

pub fn regular_representation(xi: &Section) -> Result<CMatrix> {
    RegularModel::new(xi.bundle.clone())?.operator(xi)
}

/// `ρ(C_c(B))` with a basis of `ρ`-images of the fiber bases.
#[derive(Debug, Clone)]
pub struct BundleAlgebra {
    bundle: Arc<FellBundle>,
    /// `(t, k)` of each generator `ρ(b_{t,k}) = b_{t,k} ⊗ λ_t`
    generator_index: Vec<(usize, usize)>,
    algebra: MatrixAlgebra,
    /// degree of each orthonormal basis element
    degrees: Vec<usize>,
    /// `basis[k] = Σ_j coeffs[k][j]·generator[j]`
    coeffs: Vec<Vec<C64>>,
}

impl BundleAlgebra {
    pub fn bundle(&self) -> &Arc<FellBundle> {
        &self.bundle
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.bundle.group()
    }

    pub fn rep_dim(&self) -> usize {
        self.bundle.ambient_dim() * self.bundle.group().order()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &Subspace {
        self.algebra.basis()
    }

    /// Group element carrying each orthonormal basis element.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn generator_index(&self) -> &[(usize, usize)] {
        &self.generator_index
    }

    pub fn coefficients(&self) -> &[Vec<C64>] {
        &self.coeffs
    }

    /// `b ⊗ λ_t`
    pub fn generator_map(&self, t: usize, b: &CMatrix) -> CMatrix {
        b.kron(&self.group().lambda(t))
    }

    pub fn embed(&self, xi: &Section) -> CMatrix {
        coaction_embedding(xi)
    }

    /// Inverse of `ρ` on the algebra: `ξ(t)` is the `t`-th operator Fourier
    /// coefficient `(id⊗φ)((1⊗λ_{t⁻¹})a)`.
    pub fn section_of(&self, a: &CMatrix) -> Result<Section> {
        self.algebra.coords_checked(a, DEFAULT_TOL)?;
        let g = self.group();
        let values = g
            .elements()
            .map(|t| crate::harmonic::fourier_operator(g, a, t))
            .collect::<Result<_>>()?;
        Section::new(self.bundle.clone(), values)
    }

    /// Random element `ρ(ξ)` for a random section.
    pub fn random_section(&self, rng: &mut Sampler) -> Section {
        Section::random(self.bundle.clone(), rng)
    }
}

/// Build `ρ(C_c(B))`. Fails with `AxiomFailure` if the bundle does.
pub fn build_algebra(b: Arc<FellBundle>) -> Result<BundleAlgebra> {
    let cert = b.check_axioms(DEFAULT_TOL);
    if !cert.passed() {
        return Err(Error::AxiomFailure(cert.failures().join(", ")));
    }
    let g = b.group().clone();
    let n = b.ambient_dim();
    let big = n * g.order();
    let mut gens = Vec::new();
    let mut generator_index = Vec::new();
    for t in g.elements() {
        let lt = g.lambda(t);
        for (k, x) in b.fiber(t).basis().enumerate() {
            gens.push(x.kron(&lt));
            generator_index.push((t, k));
        }
    }
    let tracked = span_orthonormalize_tracked(big, big, &gens)?;
    if tracked.subspace.dim() != gens.len() {
        return Err(Error::AxiomFailure(format!(
            "ρ is not injective: rank {} < {}",
            tracked.subspace.dim(),
            gens.len()
        )));
    }
    // Generators over distinct t have disjoint supports, so each
    // orthonormal vector stays homogeneous.
    let degrees = tracked
        .coeffs
        .iter()
        .map(|c| {
            let j = c.iter().rposition(|z| z.norm() > 0.0).expect("nonzero");
            generator_index[j].0
        })
        .collect();
    let algebra = MatrixAlgebra::new(tracked.subspace)?;
    if algebra.closure_defect() > DEFAULT_TOL || algebra.adjoint_defect() > DEFAULT_TOL {
        return Err(Error::AxiomFailure(format!(
            "image of ρ is not a *-algebra (closure {:.3e}, adjoint {:.3e})",
            algebra.closure_defect(),
            algebra.adjoint_defect()
        )));
    }
    Ok(BundleAlgebra {
        bundle: b,
        generator_index,
        algebra,
        degrees,
        coeffs: tracked.coeffs,
    })
}

/// What to do when a representation is degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegeneracyPolicy {
    Ignore,
    #[default]
    Warn,
    Fail,
}

/// A representation of the bundle on `ℂ^d`, given by the images of each
/// fiber's orthonormal basis and extended linearly.
#[derive(Debug, Clone)]
pub struct FiberRepresentation {
    bundle: Arc<FellBundle>,
    d: usize,
    images: Vec<Vec<CMatrix>>,
    nondegeneracy_defect: f64,
    warnings: Vec<String>,
}

impl FiberRepresentation {
    /// Checks multiplicativity and *-compatibility on all basis pairs; the
    /// first violated pair is named in `NotARepresentation`.
    pub fn new(
        bundle: Arc<FellBundle>,
        d: usize,
        images: Vec<Vec<CMatrix>>,
        policy: DegeneracyPolicy,
    ) -> Result<Self> {
        let g = bundle.group().clone();
        if images.len() != g.order() {
            return Err(Error::NotARepresentation(format!(
                "{} fiber image lists for a group of order {}",
                images.len(),
                g.order()
            )));
        }
        for t in g.elements() {
            if images[t].len() != bundle.fiber(t).dim() {
                return Err(Error::NotARepresentation(format!(
                    "fiber {t}: {} images for a {}-dimensional fiber",
                    images[t].len(),
                    bundle.fiber(t).dim()
                )));
            }
            if let Some(m) = images[t].iter().find(|m| m.shape() != (d, d)) {
                return Err(Error::NotARepresentation(format!(
                    "fiber {t}: image of shape {:?}, expected {d}x{d}",
                    m.shape()
                )));
            }
        }
        let mut rep = FiberRepresentation {
            bundle,
            d,
            images,
            nondegeneracy_defect: 0.0,
            warnings: Vec::new(),
        };
        let tol = DEFAULT_TOL;
        for t in g.elements() {
            let ft = rep.bundle.fiber(t).basis_vec();
            for (i, x) in ft.iter().enumerate() {
                let px = &rep.images[t][i];
                let adj = rep.apply(g.inv(t), &x.adjoint())?;
                if adj.dist(&px.adjoint()) > tol * (1.0 + px.frobenius()) {
                    return Err(Error::NotARepresentation(format!(
                        "π(b*) != π(b)* for basis element {i} of fiber {t}"
                    )));
                }
                for s in g.elements() {
                    for (j, y) in rep.bundle.fiber(s).basis().enumerate() {
                        let lhs = rep.apply(g.mul(t, s), &x.matmul(y))?;
                        let rhs = px.matmul(&rep.images[s][j]);
                        if lhs.dist(&rhs) > tol * (1.0 + rhs.frobenius()) {
                            return Err(Error::NotARepresentation(format!(
                                "π(b c) != π(b) π(c) for b = basis {i} of fiber {t}, c = basis {j} of fiber {s}"
                            )));
                        }
                    }
                }
            }
        }
        // Nondegeneracy: the ranges of all π(b) span ℂ^d.
        let mut cols = Vec::new();
        for imgs in &rep.images {
            for m in imgs {
                for j in 0..d {
                    cols.push(CMatrix::column(&m.col(j)));
                }
            }
        }
        let range = Subspace::span(d, 1, &cols)?;
        rep.nondegeneracy_defect = (d - range.dim()) as f64;
        if range.dim() < d {
            let msg = format!("representation is degenerate: essential subspace has dimension {} < {d}", range.dim());
            match policy {
                DegeneracyPolicy::Fail => return Err(Error::NotARepresentation(msg)),
                DegeneracyPolicy::Warn => rep.warnings.push(msg),
                DegeneracyPolicy::Ignore => {}
            }
        }
        Ok(rep)
    }

    /// Build from a map evaluated on fiber basis elements.
    pub fn from_fn(
        bundle: Arc<FellBundle>,
        d: usize,
        policy: DegeneracyPolicy,
        f: impl Fn(usize, &CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let images = bundle
            .fibers()
            .iter()
            .enumerate()
            .map(|(t, fib)| fib.basis().map(|b| f(t, b)).collect())
            .collect();
        FiberRepresentation::new(bundle, d, images, policy)
    }

    /// `b ↦ b ⊗ λ_t`.
    pub fn generator_map(bundle: Arc<FellBundle>) -> Result<Self> {
        let g = bundle.group().clone();
        let d = bundle.ambient_dim() * g.order();
        FiberRepresentation::from_fn(bundle, d, DegeneracyPolicy::Warn, |t, b| b.kron(&g.lambda(t)))
    }

    /// `b ↦ b` in `M_n`.
    pub fn inclusion(bundle: Arc<FellBundle>) -> Result<Self> {
        let n = bundle.ambient_dim();
        FiberRepresentation::from_fn(bundle, n, DegeneracyPolicy::Warn, |_, b| b.clone())
    }

    pub fn zero(bundle: Arc<FellBundle>, d: usize) -> Result<Self> {
        FiberRepresentation::from_fn(bundle, d, DegeneracyPolicy::Ignore, |_, _| CMatrix::zeros(d, d))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Codimension of the essential subspace (0 when nondegenerate).
    pub fn nondegeneracy_defect(&self) -> f64 {
        self.nondegeneracy_defect
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `π(b)` for `b ∈ B_t`, by linearity over the fiber basis.
    pub fn apply(&self, t: usize, b: &CMatrix) -> Result<CMatrix> {
        let c = self.bundle.fiber(t).coords(b)?;
        let mut out = CMatrix::zeros(self.d, self.d);
        for (z, m) in c.iter().zip(&self.images[t]) {
            if *z != ZERO {
                out.axpy(*z, m);
            }
        }
        Ok(out)
    }
}

/// `π(ξ) = Σ_t π(ξ(t))`
pub fn integrated_form(rep: &FiberRepresentation, xi: &Section) -> Result<CMatrix> {
    if !Arc::ptr_eq(&rep.bundle, xi.bundle()) {
        return Err(Error::BundleMismatch);
    }
    let mut out = CMatrix::zeros(rep.d, rep.d);
    for t in xi.group().elements() {
        out += &rep.apply(t, xi.value(t))?;
    }
    Ok(out)
}

/// JSON form of a section: `{"bundle": ref, "values": {"t": matrix}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionJson {
    pub bundle: serde_json::Value,
    pub values: std::collections::BTreeMap<String, CMatrix>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{group_bundle, semidirect_bundle, GlobalAction};
    use crate::groups::cyclic;
    use crate::linalg::ONE;

    fn c2_bundle() -> Arc<FellBundle> {
        Arc::new(group_bundle(Arc::new(cyclic(2).unwrap())))
    }

    fn xi_example(b: &Arc<FellBundle>) -> Section {
        let g = b.group();
        Section::new(b.clone(), vec![CMatrix::identity(2).scale_real(2.0), g.lambda(1)]).unwrap()
    }

    #[test]
    fn convolution_example() {
        let b = c2_bundle();
        let xi = xi_example(&b);
        let eta = Section::delta(b.clone(), 0, CMatrix::identity(2)).unwrap();
        let p = convolve(&xi, &eta).unwrap();
        assert!(p.dist(&xi) < 1e-15);
        assert_eq!(l2_inner(&xi, &xi).unwrap(), CMatrix::identity(2).scale_real(5.0));
    }

    #[test]
    fn embedding_example() {
        let b = c2_bundle();
        let xi = xi_example(&b);
        let g = b.group();
        let expect = &CMatrix::identity(4).scale_real(2.0) + &g.lambda(1).kron(&g.lambda(1));
        assert_eq!(coaction_embedding(&xi), expect);
        let unit = Section::delta(b.clone(), 0, CMatrix::identity(2)).unwrap();
        assert_eq!(coaction_embedding(&unit), CMatrix::identity(4));
    }

    #[test]
    fn mismatched_bundles_are_rejected() {
        let a = c2_bundle();
        let b = c2_bundle();
        assert!(matches!(
            convolve(&Section::zero(a), &Section::zero(b)),
            Err(Error::BundleMismatch)
        ));
    }

    #[test]
    fn off_fiber_value_is_rejected() {
        let b = c2_bundle();
        let r = Section::delta(b, 1, CMatrix::identity(2));
        assert!(matches!(r, Err(Error::FiberViolation(1, _))));
    }

    #[test]
    fn group_bundle_algebra_is_two_dimensional() {
        let ba = build_algebra(c2_bundle()).unwrap();
        assert_eq!(ba.dim(), 2);
        assert_eq!(ba.degrees(), &[0, 1]);
    }

    #[test]
    fn norm_agreement_on_swap_semidirect() {
        let g = Arc::new(cyclic(2).unwrap());
        let diag = Subspace::span(2, 2, &[CMatrix::unit(2, 2, 0, 0), CMatrix::unit(2, 2, 1, 1)]).unwrap();
        let swap = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let a = GlobalAction::inner(g, diag, &[CMatrix::identity(2), swap]).unwrap();
        let b = Arc::new(semidirect_bundle(&a).unwrap());
        let model = RegularModel::new(b.clone()).unwrap();
        let mut rng = Sampler::new(3);
        for _ in 0..10 {
            let xi = Section::random(b.clone(), &mut rng);
            let n1 = op_norm(&coaction_embedding(&xi)).unwrap();
            let n2 = op_norm(&model.operator(&xi).unwrap()).unwrap();
            assert!((n1 - n2).abs() <= 1e-8 * n1.max(1.0), "{n1} vs {n2}");
        }
    }

    #[test]
    fn integrated_forms() {
        let b = c2_bundle();
        let xi = xi_example(&b);
        let gen = FiberRepresentation::generator_map(b.clone()).unwrap();
        assert!(integrated_form(&gen, &xi).unwrap().dist(&coaction_embedding(&xi)) < 1e-14);
        let inc = FiberRepresentation::inclusion(b.clone()).unwrap();
        let f = [C64::new(2.0, 0.0), ONE];
        assert!(integrated_form(&inc, &xi).unwrap().dist(&b.group().lambda_of(&f)) < 1e-14);
        let zero = FiberRepresentation::zero(b.clone(), 3).unwrap();
        assert!(integrated_form(&zero, &xi).unwrap().is_zero());
        assert_eq!(zero.nondegeneracy_defect(), 3.0);
        assert!(matches!(
            FiberRepresentation::new(b, 3, vec![vec![CMatrix::zeros(3, 3)], vec![CMatrix::zeros(3, 3)]], DegeneracyPolicy::Fail),
            Err(Error::NotARepresentation(_))
        ));
    }

    #[test]
    fn non_multiplicative_map_is_named() {
        let b = c2_bundle();
        let r = FiberRepresentation::from_fn(b, 2, DegeneracyPolicy::Warn, |_, x| x.scale_real(2.0));
        match r {
            Err(Error::NotARepresentation(m)) => assert!(m.contains("fiber")),
            other => panic!("{other:?}"),
        }
    }
}
