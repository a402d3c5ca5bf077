//! Abelian groups: coactions of `G` as actions of the dual group `Ĝ`,
//! spectral subspaces and elements, reconstruction of a Fell bundle from an
//! action, and crossed products.
//!
//! Conventions: `χ_x(λ_t) = conj⟨x,t⟩`, so that the dual action on sections
//! is `(x·ξ)(t) = conj⟨x,t⟩ ξ(t)`, the spectral subspaces are
//! `{b : α_x(b) = conj⟨x,t⟩ b}`, and `E_t(b) = (1/|Ĝ|) Σ_x ⟨x,t⟩ α_x(b)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::MatrixAlgebra;
use crate::balgebra::{build_algebra, coaction_embedding, convolve, involute, BundleAlgebra, Section};
use crate::bundle::{
    apply_superop, conjugation_superop, partial_action_bundle, semidirect_bundle, FellBundle,
    GlobalAction, PartialActionData,
};
use crate::certificate::Certificate;
use crate::coaction::{dual_coaction, Coaction, FSFunction};
use crate::error::{Error, Result};
use crate::groups::{DualGroup, FiniteGroup};
use crate::harmonic::OperatorFunction;
use crate::linalg::{
    kernel_of_columns, rank_of_columns, vec_dist, vec_norm, CMatrix, Subspace, C64, DEFAULT_TOL,
    ZERO,
};
use crate::sampling::Sampler;
use crate::structure::decompose;

/// Largest ambient size for which isomorphism certificates include an
/// explicit block decomposition.
pub const STRUCTURE_LIMIT: usize = 48;

/// An action `x ↦ α_x` of `Ĝ` on `A ⊆ M_d`, as coordinate matrices over an
/// orthonormal basis of `A` (column `i` holds the coordinates of `α_x(a_i)`).
#[derive(Debug, Clone)]
pub struct DualAction {
    base: Arc<FiniteGroup>,
    dual: DualGroup,
    algebra: MatrixAlgebra,
    maps: Vec<CMatrix>,
}

impl DualAction {
    /// Validates the action axioms; `NotAnAction` names the first failure.
    pub fn new(base: Arc<FiniteGroup>, algebra: MatrixAlgebra, maps: Vec<CMatrix>) -> Result<Self> {
        let dual = DualGroup::new(&base)?;
        let dim = algebra.dim();
        if maps.len() != dual.order() {
            return Err(Error::NotAnAction(format!(
                "{} maps for a dual group of order {}",
                maps.len(),
                dual.order()
            )));
        }
        if maps.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::NotAnAction(format!("maps must be {dim}x{dim} coordinate matrices")));
        }
        let a = DualAction {
            base,
            dual,
            algebra,
            maps,
        };
        a.validate(DEFAULT_TOL)?;
        Ok(a)
    }

    /// From an arbitrary map on matrices, evaluated on the basis of `A`.
    pub fn from_fn(
        base: Arc<FiniteGroup>,
        algebra: Subspace,
        f: impl Fn(usize, &CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let alg = MatrixAlgebra::new(algebra)?;
        let n = base.order();
        let dim = alg.dim();
        let mut maps = Vec::with_capacity(n);
        for x in 0..n {
            let mut m = CMatrix::zeros(dim, dim);
            for (i, a) in alg.basis().basis().enumerate() {
                let img = f(x, a);
                let defect = alg.membership_defect(&img)?;
                if defect > DEFAULT_TOL {
                    return Err(Error::NotAnAction(format!(
                        "α_{x} maps basis element {i} out of the algebra (defect {defect:.3e})"
                    )));
                }
                for (k, z) in alg.coords(&img)?.into_iter().enumerate() {
                    m[(k, i)] = z;
                }
            }
            maps.push(m);
        }
        DualAction::new(base, alg, maps)
    }

    /// `maps[x]` are superoperators on row-major `vec(M_d)`.
    pub fn from_superops(base: Arc<FiniteGroup>, algebra: Subspace, superops: &[CMatrix]) -> Result<Self> {
        let d = algebra.shape().0;
        if superops.len() != base.order() {
            return Err(Error::NotAnAction(format!(
                "{} maps for a dual group of order {}",
                superops.len(),
                base.order()
            )));
        }
        if let Some(x) = superops.iter().position(|s| s.shape() != (d * d, d * d)) {
            return Err(Error::NotAnAction(format!("map {x} is not a superoperator on M_{d}")));
        }
        DualAction::from_fn(base, algebra, |x, a| apply_superop(&superops[x], a))
    }

    /// `α_x = Ad(u_x)`
    pub fn inner(base: Arc<FiniteGroup>, algebra: Subspace, unitaries: &[CMatrix]) -> Result<Self> {
        let ops: Vec<CMatrix> = unitaries.iter().map(conjugation_superop).collect();
        DualAction::from_superops(base, algebra, &ops)
    }

    pub fn trivial(base: Arc<FiniteGroup>, algebra: Subspace) -> Result<Self> {
        DualAction::from_fn(base, algebra, |_, a| a.clone())
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let dim = self.algebra.dim();
        let h = self.dual.group();
        let bad = |m: String| Err(Error::NotAnAction(m));
        if self.maps[h.identity()].dist(&CMatrix::identity(dim)) > tol * (1.0 + (dim as f64).sqrt()) {
            return bad("the trivial character does not act as the identity".into());
        }
        for x in h.elements() {
            for y in h.elements() {
                let lhs = self.maps[x].matmul(&self.maps[y]);
                if lhs.dist(&self.maps[h.mul(x, y)]) > tol * (1.0 + lhs.frobenius()) {
                    return bad(format!("α_{x} α_{y} != α_{}", h.mul(x, y)));
                }
            }
        }
        let alg = &self.algebra;
        for x in h.elements() {
            let m = &self.maps[x];
            let cols: Vec<Vec<C64>> = (0..dim).map(|i| m.col(i)).collect();
            for i in 0..dim {
                let mut e = vec![ZERO; dim];
                e[i] = C64::new(1.0, 0.0);
                let adj_l = m.apply(&alg.adjoint(&e));
                let adj_r = alg.adjoint(&cols[i]);
                if vec_dist(&adj_l, &adj_r) > tol * (1.0 + vec_norm(&adj_r)) {
                    return bad(format!("α_{x} does not preserve adjoints"));
                }
                for j in 0..dim {
                    let lhs = m.apply(alg.basis_product(i, j));
                    let rhs = alg.mul(&cols[i], &cols[j]);
                    if vec_dist(&lhs, &rhs) > tol * (1.0 + vec_norm(&rhs)) {
                        return bad(format!("α_{x} is not multiplicative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn dual(&self) -> &DualGroup {
        &self.dual
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn maps(&self) -> &[CMatrix] {
        &self.maps
    }

    pub fn apply_coords(&self, x: usize, c: &[C64]) -> Vec<C64> {
        self.maps[x].apply(c)
    }

    /// `α_x(b)`; `NotInAlgebra` if `b ∉ A`.
    pub fn apply(&self, x: usize, b: &CMatrix) -> Result<CMatrix> {
        let c = self.algebra.coords_checked(b, DEFAULT_TOL)?;
        Ok(self.algebra.element(&self.apply_coords(x, &c)))
    }

    /// `E_t` in coordinates.
    pub fn spectral_coords(&self, c: &[C64], t: usize) -> Vec<C64> {
        let n = self.dual.order();
        let mut out = vec![ZERO; c.len()];
        for x in 0..n {
            let w = self.dual.pairing(x, t) / n as f64;
            for (o, v) in out.iter_mut().zip(self.apply_coords(x, c)) {
                *o += w * v;
            }
        }
        out
    }

    /// Superoperator form of `α_x` on `vec(M_d)`, acting as zero off `A`.
    pub fn superop(&self, x: usize) -> CMatrix {
        let d = self.algebra.ambient();
        let mut s = CMatrix::zeros(d * d, d * d);
        for (i, a) in self.algebra.basis().basis().enumerate() {
            let col = self.maps[x].col(i);
            let img = self.algebra.element(&col);
            // s += vec(img) vec(a)*
            for (r, &u) in img.as_slice().iter().enumerate() {
                if u == ZERO {
                    continue;
                }
                for (q, v) in a.as_slice().iter().enumerate() {
                    s[(r, q)] += u * v.conj();
                }
            }
        }
        s
    }
}

/// `E_t(b) = (1/|Ĝ|) Σ_x ⟨x,t⟩ α_x(b)`
pub fn spectral_element(a: &DualAction, b: &CMatrix, t: usize) -> Result<CMatrix> {
    let c = a.algebra.coords_checked(b, DEFAULT_TOL)?;
    let n = a.dual.order();
    let mut out = CMatrix::zeros(b.rows(), b.cols());
    for x in 0..n {
        let w = a.dual.pairing(x, t) / n as f64;
        out.axpy(w, &a.algebra.element(&a.apply_coords(x, &c)));
    }
    Ok(out)
}

/// `{b : α_x(b) = conj⟨x,t⟩ b for all x}`
pub fn spectral_subspace_action(a: &DualAction, t: usize) -> Result<Subspace> {
    let dim = a.algebra.dim();
    let d = a.algebra.ambient();
    if dim == 0 {
        return Ok(Subspace::zero(d, d));
    }
    let n = a.dual.order();
    let cols: Vec<Vec<C64>> = (0..dim)
        .map(|i| {
            let mut v = Vec::with_capacity(n * dim);
            for x in 0..n {
                let w = a.dual.pairing(x, t).conj();
                for k in 0..dim {
                    let unit = if k == i { w } else { ZERO };
                    v.push(a.maps[x][(k, i)] - unit);
                }
            }
            v
        })
        .collect();
    let mats: Vec<CMatrix> = kernel_of_columns(&cols)?
        .iter()
        .map(|c| a.algebra.element(c))
        .collect();
    Subspace::span(d, d, &mats)
}

fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian(g.name().to_string()))
    }
}

/// The character `t ↦ conj⟨x,t⟩` as a function on `G`.
pub fn conjugate_character(dual: &DualGroup, base: &Arc<FiniteGroup>, x: usize) -> FSFunction {
    let values = base.elements().map(|t| dual.pairing(x, t).conj()).collect();
    FSFunction::new(base.clone(), values).expect("one value per element")
}

/// `α_x = (id⊗χ_x)∘δ`
pub fn action_from_coaction(c: &Coaction) -> Result<DualAction> {
    let g = c.group().clone();
    require_abelian(&g)?;
    let dual = DualGroup::new(&g)?;
    let alg = c.algebra();
    let dim = alg.dim();
    let mut maps = Vec::with_capacity(dual.order());
    for x in 0..dual.order() {
        let omega = conjugate_character(&dual, &g, x).on_translations()?;
        let mut m = CMatrix::zeros(dim, dim);
        for (i, img) in c.images().iter().enumerate() {
            let v = img.slice_with(&omega);
            for (k, z) in alg.coords(&v)?.into_iter().enumerate() {
                m[(k, i)] = z;
            }
        }
        maps.push(m);
    }
    DualAction::new(g, alg.clone(), maps)
}

/// `δ(b) = Σ_t E_t(b) ⊗ λ_t`
pub fn coaction_from_action(a: &DualAction) -> Result<Coaction> {
    let g = a.base.clone();
    let d = a.algebra.ambient();
    let images = a
        .algebra
        .basis()
        .basis()
        .map(|b| {
            let values = g
                .elements()
                .map(|t| spectral_element(a, b, t))
                .collect::<Result<Vec<_>>>()?;
            OperatorFunction::new(g.clone(), d, values)
        })
        .collect::<Result<Vec<_>>>()?;
    Coaction::new(g, a.algebra.clone(), images)
}

/// Basis residuals of both round trips between actions and coactions.
pub fn round_trip_defects(c: &Coaction) -> Result<(f64, f64)> {
    let a = action_from_coaction(c)?;
    let back = coaction_from_action(&a)?;
    let mut coaction_defect = 0.0f64;
    for (x, y) in c.images().iter().zip(back.images()) {
        coaction_defect = coaction_defect.max(x.dist(y));
    }
    let again = action_from_coaction(&back)?;
    let mut action_defect = 0.0f64;
    for (m1, m2) in a.maps.iter().zip(&again.maps) {
        for i in 0..m1.cols() {
            action_defect = action_defect.max(vec_dist(&m1.col(i), &m2.col(i)));
        }
    }
    Ok((coaction_defect, action_defect))
}

/// Dual action on the bundle algebra: `β_x(ρ(ξ)) = ρ(x·ξ)` with
/// `(x·ξ)(t) = conj⟨x,t⟩ ξ(t)`, and `E_t(ρ(ξ)) = ρ(ξ(t) at t)` for the
/// spectral elements of `β`.
pub fn dual_action_on_bundle(ba: &BundleAlgebra, sections: &[Section], tol: f64) -> Result<Certificate> {
    let g = ba.group().clone();
    require_abelian(&g)?;
    let beta = action_from_coaction(&dual_coaction(ba)?)?;
    let dual = beta.dual.clone();
    let mut cert = Certificate::new("dual-action");
    cert.anchor("dual-action-on-sections");
    cert.anchor("spectral-elements-of-sections");
    for xi in sections {
        let r = coaction_embedding(xi);
        for x in 0..dual.order() {
            let twist: Vec<C64> = g.elements().map(|t| dual.pairing(x, t).conj()).collect();
            let rhs = coaction_embedding(&xi.pointwise(&twist));
            let lhs = beta.apply(x, &r)?;
            cert.check("dual_action_law", lhs.dist(&rhs) / (1.0 + rhs.frobenius()), tol);
        }
        for t in g.elements() {
            let lhs = spectral_element(&beta, &r, t)?;
            let rhs = ba.generator_map(t, xi.value(t));
            cert.check("spectral_elements", lhs.dist(&rhs) / (1.0 + rhs.frobenius()), tol);
        }
    }
    Ok(cert)
}

/// Fibers `B_t` = spectral subspaces of the action, with a certificate that
/// `Θ(ξ) = Σ_t ξ(t)` is a *-isomorphism `C*(B) → A` intertwining the dual
/// action with the action.
pub fn reconstruct_bundle(a: &DualAction, tol: f64) -> Result<(FellBundle, Certificate)> {
    let g = a.base.clone();
    require_abelian(&g)?;
    let d = a.algebra.ambient();
    let fibers = g
        .elements()
        .map(|t| spectral_subspace_action(a, t))
        .collect::<Result<Vec<_>>>()?;
    let found: usize = fibers.iter().map(Subspace::dim).sum();
    if found != a.algebra.dim() {
        return Err(Error::SpectralGapFailure {
            found,
            expected: a.algebra.dim(),
        });
    }
    let bundle = Arc::new(FellBundle::new(g.clone(), d, fibers)?);
    let mut cert = Certificate::new("reconstruct");
    cert.anchor("bundle-from-action");
    cert.anchor("canonical-isomorphism");
    let axioms = bundle.check_axioms(tol);
    cert.absorb("axioms", &axioms);
    cert.info("fiber_dims", bundle.fiber_dims());

    // Θ on δ-sections of the fiber bases.
    let mut thetas = Vec::new();
    let mut membership = 0.0f64;
    for t in g.elements() {
        for b in bundle.fiber(t).basis() {
            membership = membership.max(a.algebra.membership_defect(b)?);
            thetas.push((t, b.clone()));
        }
    }
    cert.check("theta_in_algebra", membership, tol);
    let cols: Vec<Vec<C64>> = thetas
        .iter()
        .map(|(_, b)| a.algebra.coords(b))
        .collect::<Result<_>>()?;
    let rank = if cols.is_empty() { 0 } else { rank_of_columns(&cols)? };
    cert.info("theta_rank", rank);
    cert.require("theta_bijective", rank == a.algebra.dim() && thetas.len() == rank);

    let mut mult = 0.0f64;
    let mut adj = 0.0f64;
    let mut intertwine = 0.0f64;
    let theta = |xi: &Section| -> CMatrix {
        let mut s = CMatrix::zeros(d, d);
        for v in xi.values() {
            s += v;
        }
        s
    };
    let deltas: Vec<Section> = thetas
        .iter()
        .map(|(t, b)| Section::delta(bundle.clone(), *t, b.clone()))
        .collect::<Result<_>>()?;
    for (xi, (t, b)) in deltas.iter().zip(&thetas) {
        match involute(xi) {
            Ok(s) => adj = adj.max(theta(&s).dist(&b.adjoint()) / (1.0 + b.frobenius())),
            Err(_) => adj = adj.max(1.0),
        }
        for x in 0..a.dual.order() {
            let lhs = a.apply(x, b)?;
            let rhs = b.scale(a.dual.pairing(x, *t).conj());
            intertwine = intertwine.max(lhs.dist(&rhs) / (1.0 + b.frobenius()));
        }
        for eta in &deltas {
            let rhs = theta(xi).matmul(&theta(eta));
            match convolve(xi, eta) {
                Ok(p) => mult = mult.max(theta(&p).dist(&rhs) / (1.0 + rhs.frobenius())),
                Err(Error::FiberViolation(_, r)) => mult = mult.max(r / (1.0 + rhs.frobenius())),
                Err(e) => return Err(e),
            }
        }
    }
    cert.check("theta_multiplicative", mult, tol);
    cert.check("theta_adjoint", adj, tol);
    cert.check("theta_intertwines", intertwine, tol);

    // Θ∘ρ⁻¹ as a map from the concrete model ρ(C_c(B)).
    if axioms.passed() {
        let ba = build_algebra(bundle.clone())?;
        cert.require("model_dimension", ba.dim() == a.algebra.dim());
        let secs: Vec<Section> = ba
            .basis()
            .basis()
            .map(|x| ba.section_of(x))
            .collect::<Result<_>>()?;
        let images: Vec<CMatrix> = secs.iter().map(theta).collect();
        let mut model = 0.0f64;
        let alg = ba.algebra();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg.basis_product(i, j);
                let mut lhs = CMatrix::zeros(d, d);
                for (z, m) in prod.iter().zip(&images) {
                    lhs.axpy(*z, m);
                }
                let rhs = images[i].matmul(&images[j]);
                model = model.max(lhs.dist(&rhs) / (1.0 + rhs.frobenius()));
            }
        }
        cert.check("model_multiplicative", model, tol);
    }
    if d <= STRUCTURE_LIMIT && a.algebra.dim() > 0 {
        let (dec, scert) = decompose(&a.algebra, 0, tol)?;
        cert.absorb("structure", &scert);
        cert.info("signature", dec.signature());
    }
    let bundle = Arc::try_unwrap(bundle).unwrap_or_else(|b| (*b).clone());
    Ok((bundle, cert))
}

/// Input of [`crossed_product_check`].
#[derive(Debug, Clone, Copy)]
pub enum CrossedProductInput<'a> {
    Global(&'a GlobalAction),
    Partial(&'a PartialActionData),
}

/// The crossed product built from the regular covariant pair
/// (`span{π(b)u_t}` in `M_{m|G|}`) against the bundle algebra of the
/// semidirect or partial bundle, through `x ↦ Σ_t P_t(x) ⊗ λ_t` where `P_t`
/// projects onto the `t`-th fiber.
pub fn crossed_product_check(input: CrossedProductInput<'_>, tol: f64) -> Result<Certificate> {
    let bundle = Arc::new(match input {
        CrossedProductInput::Global(a) => semidirect_bundle(a)?,
        CrossedProductInput::Partial(p) => partial_action_bundle(p)?,
    });
    let g = bundle.group().clone();
    let n = bundle.ambient_dim();
    let mut cert = Certificate::new("crossed-product");
    cert.anchor("crossed-product-isomorphism");

    let mut gens = Vec::new();
    for t in g.elements() {
        gens.extend(bundle.fiber(t).basis().cloned());
    }
    let direct = MatrixAlgebra::new(Subspace::span(n, n, &gens)?)?;
    cert.check("direct_closure", direct.closure_defect().max(direct.adjoint_defect()), tol);
    let ba = build_algebra(bundle.clone())?;
    cert.info("direct_dim", direct.dim());
    cert.info("bundle_algebra_dim", ba.dim());
    cert.require("dimensions_agree", direct.dim() == ba.dim());

    let theta = |x: &CMatrix| -> Result<CMatrix> {
        let mut out = CMatrix::zeros(n * g.order(), n * g.order());
        for t in g.elements() {
            let p = bundle.fiber(t).project(x)?;
            if !p.is_zero() {
                out += &ba.generator_map(t, &p);
            }
        }
        Ok(out)
    };
    let images: Vec<CMatrix> = direct.basis().basis().map(&theta).collect::<Result<_>>()?;
    let mut member = 0.0f64;
    for y in &images {
        member = member.max(ba.algebra().membership_defect(y)?);
    }
    cert.check("intertwiner_in_bundle_algebra", member, tol);
    let cols: Vec<Vec<C64>> = images
        .iter()
        .map(|y| ba.algebra().coords(y))
        .collect::<Result<_>>()?;
    let rank = if cols.is_empty() { 0 } else { rank_of_columns(&cols)? };
    cert.require("intertwiner_bijective", rank == ba.dim() && rank == direct.dim());
    let mut mult = 0.0f64;
    let mut adj = 0.0f64;
    let dim = direct.dim();
    for i in 0..dim {
        let mut e = vec![ZERO; dim];
        e[i] = C64::new(1.0, 0.0);
        let star = direct.adjoint(&e);
        let mut lhs = CMatrix::zeros(images[i].rows(), images[i].cols());
        for (z, m) in star.iter().zip(&images) {
            lhs.axpy(*z, m);
        }
        adj = adj.max(lhs.dist(&images[i].adjoint()) / (1.0 + images[i].frobenius()));
        for j in 0..dim {
            let mut lhs = CMatrix::zeros(images[i].rows(), images[i].cols());
            for (z, m) in direct.basis_product(i, j).iter().zip(&images) {
                lhs.axpy(*z, m);
            }
            let rhs = images[i].matmul(&images[j]);
            mult = mult.max(lhs.dist(&rhs) / (1.0 + rhs.frobenius()));
        }
    }
    cert.check("intertwiner_multiplicative", mult, tol);
    cert.check("intertwiner_adjoint", adj, tol);

    if dim > 0 && n <= STRUCTURE_LIMIT {
        let (dec, scert) = decompose(&direct, 0, tol)?;
        cert.absorb("direct_structure", &scert);
        cert.info("direct_signature", dec.signature());
        if ba.rep_dim() <= STRUCTURE_LIMIT {
            let (dec2, scert2) = decompose(ba.algebra(), 1, tol)?;
            cert.absorb("bundle_structure", &scert2);
            cert.info("bundle_signature", dec2.signature());
            cert.require("signatures_agree", dec.signature() == dec2.signature());
        }
    }
    Ok(cert)
}

/// Random action of `Ĝ` on `M_d` by `Ad(V D_x V*)` with `D_x` diagonal
/// characters; each `D_x` is a product of diagonal sign/phase matrices.
pub fn random_inner_action(base: Arc<FiniteGroup>, d: usize, rng: &mut Sampler) -> Result<DualAction> {
    let dual = DualGroup::new(&base)?;
    let v = rng.unitary(d);
    // a random "weight" t_k ∈ G per diagonal entry; D_x = diag(⟨x, t_k⟩)
    let weights: Vec<usize> = (0..d).map(|_| rng.index(base.order())).collect();
    let unitaries: Vec<CMatrix> = (0..dual.order())
        .map(|x| {
            let diag: Vec<C64> = weights.iter().map(|&t| dual.pairing(x, t)).collect();
            v.matmul(&CMatrix::diagonal(&diag)).matmul(&v.adjoint())
        })
        .collect();
    DualAction::inner(base, Subspace::full(d, d), &unitaries)
}

/// JSON form: `{"group_dual_of": ref, "algebra": [matrix...], "maps": {"x": superoperator}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionJson {
    pub group_dual_of: serde_json::Value,
    pub algebra: Vec<CMatrix>,
    pub maps: std::collections::BTreeMap<String, CMatrix>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::group_bundle;
    use crate::coaction::check_coaction;
    use crate::groups::{cyclic, product};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(cyclic(n).unwrap())
    }

    fn gauge_m2() -> DualAction {
        let z = CMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        DualAction::inner(c(2), Subspace::full(2, 2), &[CMatrix::identity(2), z]).unwrap()
    }

    #[test]
    fn gauge_action_spectral_data() {
        let a = gauge_m2();
        let e12 = CMatrix::unit(2, 2, 0, 1);
        assert!(spectral_element(&a, &e12, 1).unwrap().dist(&e12) < 1e-15);
        assert!(spectral_element(&a, &e12, 0).unwrap().is_zero());
        assert_eq!(spectral_subspace_action(&a, 0).unwrap().dim(), 2);
        assert!(spectral_subspace_action(&a, 1).unwrap().contains(&e12, 1e-12).unwrap());
        let co = coaction_from_action(&a).unwrap();
        assert!(check_coaction(&co, 1e-10).passed());
        let d = co.delta(&CMatrix::unit(2, 2, 1, 0)).unwrap();
        assert_eq!(d.support(), vec![1]);
    }

    #[test]
    fn gauge_reconstruction_is_m2() {
        let (b, cert) = reconstruct_bundle(&gauge_m2(), 1e-10).unwrap();
        assert_eq!(b.fiber_dims(), vec![2, 2]);
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(cert.informational["signature"], "M_2");
    }

    #[test]
    fn comultiplication_gives_gauge_action() {
        let g = c(2);
        let a = action_from_coaction(&Coaction::comultiplication(g.clone()).unwrap()).unwrap();
        let sign = 1;
        let img = a.apply(sign, &g.lambda(1)).unwrap();
        assert!(img.dist(&g.lambda(1).scale_real(-1.0)) < 1e-14);
    }

    #[test]
    fn group_bundle_c4_dual_action() {
        let ba = build_algebra(Arc::new(group_bundle(c(4)))).unwrap();
        let mut rng = Sampler::new(1);
        let secs: Vec<Section> = (0..5).map(|_| ba.random_section(&mut rng)).collect();
        let cert = dual_action_on_bundle(&ba, &secs, 1e-11).unwrap();
        assert!(cert.passed(), "{cert:?}");
        let (dc, da) = round_trip_defects(&dual_coaction(&ba).unwrap()).unwrap();
        assert!(dc < 1e-12 && da < 1e-12);
    }

    #[test]
    fn random_inner_actions_round_trip() {
        let k = Arc::new(product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap());
        let mut rng = Sampler::new(5);
        for _ in 0..3 {
            let a = random_inner_action(k.clone(), 4, &mut rng).unwrap();
            let co = coaction_from_action(&a).unwrap();
            assert!(check_coaction(&co, 1e-10).passed());
            let (dc, da) = round_trip_defects(&co).unwrap();
            assert!(dc < 1e-11 && da < 1e-11, "{dc} {da}");
        }
    }

    #[test]
    fn non_abelian_is_rejected() {
        let s3 = Arc::new(crate::groups::symmetric3().unwrap());
        let co = Coaction::comultiplication(s3).unwrap();
        assert!(matches!(action_from_coaction(&co), Err(Error::NotAbelian(_))));
    }

    #[test]
    fn swap_crossed_product_is_m2() {
        let g = c(2);
        let diag = Subspace::span(2, 2, &[CMatrix::unit(2, 2, 0, 0), CMatrix::unit(2, 2, 1, 1)]).unwrap();
        let swap = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let a = GlobalAction::inner(g, diag, &[CMatrix::identity(2), swap]).unwrap();
        let cert = crossed_product_check(CrossedProductInput::Global(&a), 1e-11).unwrap();
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(cert.informational["direct_signature"], "M_2");
        assert_eq!(cert.informational["bundle_signature"], "M_2");
        let ideal = Subspace::span(2, 2, &[CMatrix::unit(2, 2, 0, 0)]).unwrap();
        let p = PartialActionData::new(a, ideal).unwrap();
        let cert = crossed_product_check(CrossedProductInput::Partial(&p), 1e-11).unwrap();
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(cert.informational["direct_dim"], 1);
    }
}
