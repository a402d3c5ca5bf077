//! Fell bundles over finite groups, embedded as graded families of matrix
//! subspaces, and their constructions from group data, global actions and
//! partial actions.

use std::sync::Arc;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{op_norm, psd_margin, rel_diff, CMatrix, Subspace, DEFAULT_TOL};

/// A `G`-graded family `t ↦ B_t` of subspaces of `M_n`.
#[derive(Debug, Clone)]
pub struct FellBundle {
    group: Arc<FiniteGroup>,
    n: usize,
    fibers: Vec<Subspace>,
}

impl FellBundle {
    pub fn new(group: Arc<FiniteGroup>, n: usize, fibers: Vec<Subspace>) -> Result<Self> {
        if fibers.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} fibers for a group of order {}",
                fibers.len(),
                group.order()
            )));
        }
        if let Some((t, f)) = fibers.iter().enumerate().find(|(_, f)| f.shape() != (n, n)) {
            return Err(Error::DimensionMismatch(format!(
                "fiber {t} lives in {:?}, expected {n}x{n}",
                f.shape()
            )));
        }
        Ok(FellBundle { group, n, fibers })
    }

    /// Fibers given by spanning sets.
    pub fn from_spanning_sets(
        group: Arc<FiniteGroup>,
        n: usize,
        spanning: &[Vec<CMatrix>],
    ) -> Result<Self> {
        let fibers = spanning
            .iter()
            .map(|mats| Subspace::span(n, n, mats))
            .collect::<Result<Vec<_>>>()?;
        FellBundle::new(group, n, fibers)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn fiber(&self, t: usize) -> &Subspace {
        &self.fibers[t]
    }

    pub fn fibers(&self) -> &[Subspace] {
        &self.fibers
    }

    pub fn fiber_dims(&self) -> Vec<usize> {
        self.fibers.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.fibers.iter().map(Subspace::dim).sum()
    }

    pub fn check_axioms(&self, tol: f64) -> Certificate {
        check_bundle_axioms(self, tol)
    }
}

/// Residuals of the Fell bundle axioms on fiber bases: closure under
/// products, `B_t* = B_{t⁻¹}`, `b b*, b* b ∈ B_e`, the C*-identity and
/// positivity of `b* b`. Failures are reported, never raised.
pub fn check_bundle_axioms(b: &FellBundle, tol: f64) -> Certificate {
    let mut cert = Certificate::new("bundle-axioms");
    for a in [
        "fiber-closure",
        "fiber-involution",
        "unit-fiber-products",
        "cstar-identity",
        "positivity",
    ] {
        cert.anchor(a);
    }
    let g = &b.group;
    let rel = |s: &Subspace, m: &CMatrix| -> f64 {
        s.residual(m).map_or(f64::INFINITY, |r| r / (1.0 + m.frobenius()))
    };

    let mut closure = 0.0f64;
    for t in g.elements() {
        for s in g.elements() {
            let target = &b.fibers[g.mul(t, s)];
            for x in b.fibers[t].basis() {
                for y in b.fibers[s].basis() {
                    closure = closure.max(rel(target, &x.matmul(y)));
                }
            }
        }
    }
    cert.check("closure", closure, tol);

    let mut involution = 0.0f64;
    for t in g.elements() {
        let d = b.fibers[t]
            .adjoint()
            .equality_defect(&b.fibers[g.inv(t)])
            .unwrap_or(f64::INFINITY);
        involution = involution.max(d);
    }
    cert.check("involution", involution, tol);

    let unit = &b.fibers[0];
    let mut products = 0.0f64;
    let mut cstar = 0.0f64;
    let mut positivity = 0.0f64;
    for fiber in &b.fibers {
        for x in fiber.basis() {
            let xs = x.adjoint();
            let xxs = x.matmul(&xs);
            let xsx = xs.matmul(x);
            products = products.max(rel(unit, &xxs)).max(rel(unit, &xsx));
            let nx = op_norm(x).unwrap_or(f64::NAN);
            let nxsx = op_norm(&xsx).unwrap_or(f64::NAN);
            cstar = cstar.max(rel_diff(nxsx, nx * nx));
            let margin = psd_margin(&xsx, tol).unwrap_or(f64::NEG_INFINITY);
            positivity = positivity.max((-margin).max(0.0));
        }
    }
    cert.check("unit_fiber_products", products, tol);
    cert.check("cstar_identity", cstar, tol);
    cert.check("positivity", positivity, tol);

    // B_t B_t* B_t = B_t is not part of the definition; report only.
    let mut saturation = 0.0f64;
    for fiber in &b.fibers {
        let basis = fiber.basis_vec();
        let mut triples = Vec::new();
        for x in &basis {
            for y in &basis {
                let xy = x.matmul(&y.adjoint());
                for z in &basis {
                    triples.push(xy.matmul(z));
                }
            }
        }
        let span = Subspace::span(b.n, b.n, &triples).unwrap_or_else(|_| Subspace::zero(b.n, b.n));
        saturation = saturation.max(fiber.containment_defect(&span).unwrap_or(f64::INFINITY));
    }
    cert.info("saturation_defect", saturation);
    cert.info("fiber_dims", b.fiber_dims());
    cert
}

/// `B_t = span{λ_t}` in `M_{|G|}`.
pub fn group_bundle(g: Arc<FiniteGroup>) -> FellBundle {
    let n = g.order();
    let fibers = g
        .elements()
        .map(|t| Subspace::span(n, n, &[g.lambda(t)]).expect("square"))
        .collect();
    FellBundle {
        group: g,
        n,
        fibers,
    }
}

/// Apply a superoperator (acting on row-major `vec(X)`) to `x`.
pub fn apply_superop(op: &CMatrix, x: &CMatrix) -> CMatrix {
    let v = op.apply(x.as_slice());
    CMatrix::from_vec(x.rows(), x.cols(), v).expect("superoperator preserves shape")
}

/// Superoperator of `X ↦ u X u*` on row-major `vec`: `u ⊗ conj(u)`.
pub fn conjugation_superop(u: &CMatrix) -> CMatrix {
    u.kron(&u.conj())
}

/// An action `t ↦ β_t` of `G` by *-automorphisms of a matrix algebra `B ⊆ M_m`.
#[derive(Debug, Clone)]
pub struct GlobalAction {
    group: Arc<FiniteGroup>,
    m: usize,
    algebra: Subspace,
    maps: Vec<CMatrix>,
}

impl GlobalAction {
    /// `maps[t]` is an `m² x m²` superoperator on row-major `vec(M_m)`.
    pub fn new(group: Arc<FiniteGroup>, algebra: Subspace, maps: Vec<CMatrix>) -> Result<Self> {
        let (m, m2) = algebra.shape();
        if m != m2 {
            return Err(Error::InvalidAction("coefficient algebra must consist of square matrices".into()));
        }
        if maps.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        if let Some(t) = maps.iter().position(|s| s.shape() != (m * m, m * m)) {
            return Err(Error::InvalidAction(format!(
                "map {t} is not a superoperator on M_{m}"
            )));
        }
        let a = GlobalAction {
            group,
            m,
            algebra,
            maps,
        };
        a.validate(DEFAULT_TOL)?;
        Ok(a)
    }

    /// `β_t = Ad(u_t)` restricted to `algebra`.
    pub fn inner(group: Arc<FiniteGroup>, algebra: Subspace, unitaries: &[CMatrix]) -> Result<Self> {
        let maps = unitaries.iter().map(conjugation_superop).collect();
        GlobalAction::new(group, algebra, maps)
    }

    pub fn trivial(group: Arc<FiniteGroup>, algebra: Subspace) -> Result<Self> {
        let m = algebra.shape().0;
        let maps = vec![CMatrix::identity(m * m); group.order()];
        GlobalAction::new(group, algebra, maps)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn algebra(&self) -> &Subspace {
        &self.algebra
    }

    pub fn coefficient_dim(&self) -> usize {
        self.m
    }

    pub fn maps(&self) -> &[CMatrix] {
        &self.maps
    }

    /// `β_t(x)`
    pub fn apply(&self, t: usize, x: &CMatrix) -> CMatrix {
        apply_superop(&self.maps[t], x)
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let g = &self.group;
        let alg = &self.algebra;
        let bad = |what: String| Err(Error::InvalidAction(what));
        let basis = alg.basis_vec();
        for (i, x) in basis.iter().enumerate() {
            if !alg.contains(&x.adjoint(), tol)? {
                return bad(format!("coefficient algebra is not closed under adjoints (basis {i})"));
            }
            for y in &basis {
                if !alg.contains(&x.matmul(y), tol)? {
                    return bad("coefficient algebra is not closed under products".into());
                }
            }
        }
        for x in &basis {
            let scale = tol * (1.0 + x.frobenius());
            if self.apply(0, x).dist(x) > scale {
                return bad("β_e is not the identity".into());
            }
            for t in g.elements() {
                let bx = self.apply(t, x);
                if !alg.contains(&bx, tol)? {
                    return bad(format!("β_{t} does not map the algebra into itself"));
                }
                if self.apply(t, &x.adjoint()).dist(&bx.adjoint()) > scale {
                    return bad(format!("β_{t} does not preserve adjoints"));
                }
                for s in g.elements() {
                    let lhs = self.apply(s, &bx);
                    let rhs = self.apply(g.mul(s, t), x);
                    if lhs.dist(&rhs) > scale {
                        return bad(format!("β_{s}∘β_{t} != β_{}", g.mul(s, t)));
                    }
                }
                for y in &basis {
                    let lhs = self.apply(t, &x.matmul(y));
                    let rhs = bx.matmul(&self.apply(t, y));
                    if lhs.dist(&rhs) > tol * (1.0 + lhs.frobenius()) {
                        return bad(format!("β_{t} is not multiplicative"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `π(b) = Σ_s β_{s⁻¹}(b) ⊗ E_ss` on `ℂ^m ⊗ ℂ^G`.
    pub fn covariant_pi(&self, b: &CMatrix) -> CMatrix {
        let g = &self.group;
        let k = g.order();
        let mut out = CMatrix::zeros(self.m * k, self.m * k);
        for s in g.elements() {
            let bs = self.apply(g.inv(s), b);
            for i in 0..self.m {
                for j in 0..self.m {
                    out[(i * k + s, j * k + s)] = bs[(i, j)];
                }
            }
        }
        out
    }

    /// `u_t = I_m ⊗ λ_t`
    pub fn covariant_u(&self, t: usize) -> CMatrix {
        CMatrix::identity(self.m).kron(&self.group.lambda(t))
    }
}

/// Semidirect-product bundle: `B̂_t = span{π(b) u_t}` in `M_{m|G|}`.
pub fn semidirect_bundle(a: &GlobalAction) -> Result<FellBundle> {
    let g = a.group.clone();
    let n = a.m * g.order();
    let pis: Vec<CMatrix> = a.algebra.basis().map(|b| a.covariant_pi(b)).collect();
    let mut fibers = Vec::with_capacity(g.order());
    for t in g.elements() {
        let u = a.covariant_u(t);
        let mats: Vec<CMatrix> = pis.iter().map(|p| p.matmul(&u)).collect();
        let f = Subspace::span(n, n, &mats)?;
        if f.dim() != a.algebra.dim() {
            return Err(Error::InvalidAction(format!(
                "fiber {t} has dimension {} instead of {}",
                f.dim(),
                a.algebra.dim()
            )));
        }
        fibers.push(f);
    }
    FellBundle::new(g, n, fibers)
}

/// A global action together with an ideal `I` of its coefficient algebra.
#[derive(Debug, Clone)]
pub struct PartialActionData {
    action: GlobalAction,
    ideal: Subspace,
}

impl PartialActionData {
    pub fn new(action: GlobalAction, ideal: Subspace) -> Result<Self> {
        let tol = DEFAULT_TOL;
        let alg = &action.algebra;
        if ideal.shape() != alg.shape() {
            return Err(Error::NotAnIdeal("ideal lives in a different matrix space".into()));
        }
        if alg.containment_defect(&ideal)? > tol {
            return Err(Error::NotAnIdeal("not contained in the coefficient algebra".into()));
        }
        for x in ideal.basis() {
            if !ideal.contains(&x.adjoint(), tol)? {
                return Err(Error::NotAnIdeal("not closed under adjoints".into()));
            }
            for b in alg.basis() {
                if !ideal.contains(&x.matmul(b), tol)? || !ideal.contains(&b.matmul(x), tol)? {
                    return Err(Error::NotAnIdeal("not absorbing under multiplication".into()));
                }
            }
        }
        Ok(PartialActionData { action, ideal })
    }

    pub fn action(&self) -> &GlobalAction {
        &self.action
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }
}

/// `I_t = I ∩ β_t(I)`
pub fn intersect_ideals(a: &GlobalAction, ideal: &Subspace, t: usize) -> Result<Subspace> {
    let (m, _) = ideal.shape();
    let moved = ideal.image(m, m, |x| a.apply(t, x))?;
    ideal.intersect(&moved)
}

/// Partial crossed-product bundle: `B̂_t = {π(b) u_t : b ∈ I_t}`.
pub fn partial_action_bundle(p: &PartialActionData) -> Result<FellBundle> {
    let a = &p.action;
    let g = a.group.clone();
    let n = a.m * g.order();
    let mut fibers = Vec::with_capacity(g.order());
    for t in g.elements() {
        let it = intersect_ideals(a, &p.ideal, t)?;
        let u = a.covariant_u(t);
        let mats: Vec<CMatrix> = it.basis().map(|b| a.covariant_pi(b).matmul(&u)).collect();
        fibers.push(Subspace::span(n, n, &mats)?);
    }
    FellBundle::new(g, n, fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;
    use crate::linalg::C64;

    fn diag2() -> Subspace {
        Subspace::span(2, 2, &[CMatrix::unit(2, 2, 0, 0), CMatrix::unit(2, 2, 1, 1)]).unwrap()
    }

    fn swap_action() -> GlobalAction {
        let g = Arc::new(cyclic(2).unwrap());
        let swap = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        GlobalAction::inner(g, diag2(), &[CMatrix::identity(2), swap]).unwrap()
    }

    #[test]
    fn group_bundle_of_c2() {
        let b = group_bundle(Arc::new(cyclic(2).unwrap()));
        assert_eq!(b.fiber_dims(), vec![1, 1]);
        let cert = b.check_axioms(1e-12);
        assert!(cert.passed(), "{cert:?}");
    }

    #[test]
    fn scalar_grading_is_legitimate() {
        let g = Arc::new(cyclic(2).unwrap());
        let id = CMatrix::identity(2);
        let b = FellBundle::from_spanning_sets(g, 2, &[vec![id.clone()], vec![id]]).unwrap();
        assert!(b.check_axioms(1e-12).passed());
    }

    #[test]
    fn nilpotent_fiber_fails_involution() {
        let g = Arc::new(cyclic(2).unwrap());
        let b = FellBundle::from_spanning_sets(
            g,
            2,
            &[vec![CMatrix::identity(2)], vec![CMatrix::unit(2, 2, 0, 1)]],
        )
        .unwrap();
        let cert = b.check_axioms(1e-9);
        assert!(!cert.passed());
        assert!(cert.failures().contains(&"involution".to_string()));
        assert!(cert.residual("closure").unwrap() < 1e-12);
    }

    #[test]
    fn swap_semidirect_has_two_dimensional_fibers() {
        let b = semidirect_bundle(&swap_action()).unwrap();
        assert_eq!(b.ambient_dim(), 4);
        assert_eq!(b.fiber_dims(), vec![2, 2]);
        assert!(b.check_axioms(1e-10).passed());
    }

    #[test]
    fn partial_swap_kills_the_off_fiber() {
        let a = swap_action();
        let ideal = Subspace::span(2, 2, &[CMatrix::unit(2, 2, 0, 0)]).unwrap();
        assert_eq!(intersect_ideals(&a, &ideal, 0).unwrap().dim(), 1);
        assert_eq!(intersect_ideals(&a, &ideal, 1).unwrap().dim(), 0);
        let p = PartialActionData::new(a.clone(), ideal).unwrap();
        let b = partial_action_bundle(&p).unwrap();
        assert_eq!(b.fiber_dims(), vec![1, 0]);
        assert!(b.check_axioms(1e-10).passed());

        let full = PartialActionData::new(a.clone(), diag2()).unwrap();
        assert_eq!(partial_action_bundle(&full).unwrap().fiber_dims(), vec![2, 2]);
        let zero = PartialActionData::new(a, Subspace::zero(2, 2)).unwrap();
        assert_eq!(partial_action_bundle(&zero).unwrap().total_dim(), 0);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let a = swap_action();
        let not_ideal = Subspace::span(2, 2, &[CMatrix::identity(2).scale(C64::new(0.0, 1.0)) ]).unwrap();
        // span{I} is a subalgebra but not an ideal of the diagonal algebra
        assert!(matches!(
            PartialActionData::new(a, not_ideal),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn non_action_is_rejected() {
        let g = Arc::new(cyclic(3).unwrap());
        let swap = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = GlobalAction::inner(g, diag2(), &[CMatrix::identity(2), swap.clone(), swap]);
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }
}
