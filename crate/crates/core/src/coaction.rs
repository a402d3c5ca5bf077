//! Coactions `δ: A → A ⊗ C*_r(G)` of a finite group on concrete matrix
//! algebras, stored by their values on an orthonormal basis of `A`.
//!
//! `δ(a) = Σ_t X_t ⊗ λ_t` is held as an [`OperatorFunction`] of legs
//! `X_t`. Axiom checks run in the coordinates of `A`; Fourier coefficients
//! `E_t(a) = (id⊗φ)((1⊗λ_{t⁻¹})δ(a))` are evaluated literally.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::MatrixAlgebra;
use crate::balgebra::BundleAlgebra;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::harmonic::{fourier_scalar, OperatorFunction, PlancherelWeight};
use crate::linalg::{
    kernel_of_columns, rank_of_columns, span_orthonormalize_tracked, vec_norm, CMatrix, Subspace,
    C64, DEFAULT_TOL, ONE, ZERO,
};
use crate::sampling::Sampler;

#[derive(Debug, Clone)]
pub struct Coaction {
    group: Arc<FiniteGroup>,
    algebra: MatrixAlgebra,
    /// `δ(a_i)` for the orthonormal basis `a_i`
    images: Vec<OperatorFunction>,
    /// `coords[i][t]`: coordinates of the leg at `t` of `δ(a_i)`
    coords: Vec<Vec<Vec<C64>>>,
    /// how far the images are from `A ⊗ span{λ_t}` (relative)
    span_defect: f64,
    phi: PlancherelWeight,
    spectral: OnceLock<Vec<Vec<Vec<C64>>>>,
}

fn zero_coords(dim: usize) -> Vec<C64> {
    vec![ZERO; dim]
}

fn axpy_coords(out: &mut [C64], s: C64, x: &[C64]) {
    if s == ZERO {
        return;
    }
    for (o, v) in out.iter_mut().zip(x) {
        *o += s * v;
    }
}

fn coords_dist_sq(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum()
}

fn coords_norm_sq(x: &[C64]) -> f64 {
    x.iter().map(C64::norm_sqr).sum()
}

impl Coaction {
    /// `images[i] = δ(a_i)` on the orthonormal basis of `algebra`.
    pub fn new(
        group: Arc<FiniteGroup>,
        algebra: MatrixAlgebra,
        images: Vec<OperatorFunction>,
    ) -> Result<Self> {
        let d = algebra.ambient();
        if images.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a {}-dimensional algebra",
                images.len(),
                algebra.dim()
            )));
        }
        let mut coords = Vec::with_capacity(images.len());
        let mut span_defect = 0.0f64;
        for (i, f) in images.iter().enumerate() {
            if f.dim() != d || f.group().order() != group.order() {
                return Err(Error::DimensionMismatch(format!(
                    "image {i} is not an element of M_{d} ⊗ M_{}",
                    group.order()
                )));
            }
            let mut legs = Vec::with_capacity(group.order());
            for x in f.values() {
                let c = algebra.coords(x)?;
                let back = algebra.element(&c);
                span_defect = span_defect.max(x.dist(&back) / (1.0 + x.frobenius()));
                legs.push(c);
            }
            coords.push(legs);
        }
        Ok(Coaction {
            phi: PlancherelWeight::new(group.clone()),
            group,
            algebra,
            images,
            coords,
            span_defect,
            spectral: OnceLock::new(),
        })
    }

    /// From images of a spanning set of `A`, extended linearly.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        generators: &[CMatrix],
        images: &[OperatorFunction],
    ) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        let d = match generators.first() {
            Some(g) => g.rows(),
            None => return Err(Error::InvalidInput("empty generating set".into())),
        };
        let tracked = span_orthonormalize_tracked(d, d, generators)?;
        let basis_images = tracked
            .coeffs
            .iter()
            .map(|c| {
                let mut f = OperatorFunction::zero(group.clone(), d);
                for (z, img) in c.iter().zip(images) {
                    if *z != ZERO {
                        f.axpy(*z, img);
                    }
                }
                f
            })
            .collect();
        let algebra = MatrixAlgebra::new(tracked.subspace)?;
        // A linear map given on a dependent spanning set must respect its
        // relations; the defect shows up as images of zero.
        let c = Coaction::new(group, algebra, basis_images)?;
        for (j, (x, img)) in generators.iter().zip(images).enumerate() {
            let got = c.delta_unchecked(x)?;
            if got.dist(img) > DEFAULT_TOL * (1.0 + img.frobenius()) {
                return Err(Error::InvalidInput(format!(
                    "images are not linear in the generators (generator {j})"
                )));
            }
        }
        Ok(c)
    }

    /// From dense images in `M_d ⊗ M_{|G|}` (index `i·|G| + s`). Parts of the
    /// images outside `M_d ⊗ span{λ_t}` count towards the span defect.
    pub fn from_dense(group: Arc<FiniteGroup>, generators: &[CMatrix], dense: &[CMatrix]) -> Result<Self> {
        let mut legs = Vec::with_capacity(dense.len());
        let mut outside = 0.0f64;
        for m in dense {
            let f = OperatorFunction::from_operator(group.clone(), m)?;
            outside = outside.max(m.dist(&f.lambda_op()) / (1.0 + m.frobenius()));
            legs.push(f);
        }
        let mut c = Coaction::from_generators(group, generators, &legs)?;
        c.span_defect = c.span_defect.max(outside);
        Ok(c)
    }

    /// `x ↦ x ⊗ λ_{t}` on homogeneous spanning elements `(t, x)`.
    pub fn from_grading(group: Arc<FiniteGroup>, homogeneous: &[(usize, CMatrix)]) -> Result<Self> {
        let gens: Vec<CMatrix> = homogeneous.iter().map(|(_, x)| x.clone()).collect();
        let images: Vec<OperatorFunction> = homogeneous
            .iter()
            .map(|(t, x)| OperatorFunction::delta(group.clone(), *t, x.clone()))
            .collect();
        Coaction::from_generators(group, &gens, &images)
    }

    /// `a ↦ a ⊗ λ_e`
    pub fn trivial(group: Arc<FiniteGroup>, algebra: Subspace) -> Result<Self> {
        let alg = MatrixAlgebra::new(algebra)?;
        let e = group.identity();
        let images = alg
            .basis()
            .basis()
            .map(|a| OperatorFunction::delta(group.clone(), e, a.clone()))
            .collect();
        Coaction::new(group, alg, images)
    }

    /// `λ_t ↦ λ_t ⊗ λ_t` on `span{λ_t} ⊆ M_{|G|}`.
    pub fn comultiplication(group: Arc<FiniteGroup>) -> Result<Self> {
        Coaction::translation_map(group, |t| t, |t| t)
    }

    /// `λ_t ↦ λ_{f(t)} ⊗ λ_{h(t)}` on `span{λ_t}`; a coaction only for
    /// suitable `f, h`.
    pub fn translation_map(
        group: Arc<FiniteGroup>,
        f: impl Fn(usize) -> usize,
        h: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let gens: Vec<CMatrix> = group.elements().map(|t| group.lambda(t)).collect();
        let images: Vec<OperatorFunction> = group
            .elements()
            .map(|t| OperatorFunction::delta(group.clone(), h(t), group.lambda(f(t))))
            .collect();
        Coaction::from_generators(group, &gens, &images)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `d` with `A ⊆ M_d`.
    pub fn ambient(&self) -> usize {
        self.algebra.ambient()
    }

    pub fn images(&self) -> &[OperatorFunction] {
        &self.images
    }

    /// Coordinates of the legs of `δ(a_i)`: `leg_coords()[i][t]`.
    pub fn leg_coords(&self) -> &[Vec<Vec<C64>>] {
        &self.coords
    }

    pub fn span_defect(&self) -> f64 {
        self.span_defect
    }

    pub fn weight(&self) -> &PlancherelWeight {
        &self.phi
    }

    fn delta_unchecked(&self, a: &CMatrix) -> Result<OperatorFunction> {
        let c = self.algebra.coords(a)?;
        Ok(self.delta_of_coords(&c))
    }

    /// `δ(a)`; `NotInAlgebra` if `a ∉ A`.
    pub fn delta(&self, a: &CMatrix) -> Result<OperatorFunction> {
        let c = self.algebra.coords_checked(a, DEFAULT_TOL)?;
        Ok(self.delta_of_coords(&c))
    }

    pub fn delta_of_coords(&self, c: &[C64]) -> OperatorFunction {
        let mut f = OperatorFunction::zero(self.group.clone(), self.ambient());
        for (z, img) in c.iter().zip(&self.images) {
            if *z != ZERO {
                f.axpy(*z, img);
            }
        }
        f
    }

    /// Coordinates of the legs of `δ(a)` for `a` with coordinates `c`.
    pub fn delta_coords(&self, c: &[C64]) -> Vec<Vec<C64>> {
        let dim = self.dim();
        let mut out = vec![zero_coords(dim); self.group.order()];
        for (i, &z) in c.iter().enumerate() {
            for (t, leg) in self.coords[i].iter().enumerate() {
                axpy_coords(&mut out[t], z, leg);
            }
        }
        out
    }

    /// `E_t(a) = (id⊗φ)((1⊗λ_{t⁻¹})δ(a))`
    pub fn fourier_coeff(&self, a: &CMatrix, t: usize) -> Result<CMatrix> {
        let d = self.delta(a)?;
        Ok(self.coeff_of_image(&d, t))
    }

    /// `E_t` applied to an already computed `δ(a)`.
    pub fn coeff_of_image(&self, delta_a: &OperatorFunction, t: usize) -> CMatrix {
        delta_a.left_shift(self.group.inv(t)).slice(&self.phi)
    }

    /// All coefficients `t ↦ E_t(a)`.
    pub fn fourier_coeffs(&self, a: &CMatrix) -> Result<Vec<CMatrix>> {
        let d = self.delta(a)?;
        Ok(self.group.elements().map(|t| self.coeff_of_image(&d, t)).collect())
    }

    /// `E_t` in coordinates: the slice picks out the leg at `t`.
    pub fn fourier_coeff_coords(&self, c: &[C64], t: usize) -> Vec<C64> {
        let mut out = zero_coords(self.dim());
        for (i, &z) in c.iter().enumerate() {
            axpy_coords(&mut out, z, &self.coords[i][t]);
        }
        out
    }

    /// `Av(a) = (id⊗φ)(δ(a))`
    pub fn average(&self, a: &CMatrix) -> Result<CMatrix> {
        Ok(self.delta(a)?.slice(&self.phi))
    }

    /// Coordinate bases of `M_t(A) = {b : δ(b) = b⊗λ_t}` for all `t`.
    pub fn spectral_coords(&self) -> &[Vec<Vec<C64>>] {
        self.spectral.get_or_init(|| {
            self.group
                .elements()
                .map(|t| self.compute_spectral(t))
                .collect()
        })
    }

    fn compute_spectral(&self, t: usize) -> Vec<Vec<C64>> {
        let dim = self.dim();
        if dim == 0 {
            return Vec::new();
        }
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|i| {
                let mut v = Vec::with_capacity(dim * self.group.order());
                for s in self.group.elements() {
                    for (k, &z) in self.coords[i][s].iter().enumerate() {
                        let unit = if s == t && k == i { ONE } else { ZERO };
                        v.push(z - unit);
                    }
                }
                v
            })
            .collect();
        kernel_of_columns(&cols).unwrap_or_default()
    }

    /// `M_t(A)` as a subspace of `M_d`.
    pub fn spectral_subspace(&self, t: usize) -> Result<Subspace> {
        let d = self.ambient();
        let mats: Vec<CMatrix> = self.spectral_coords()[t]
            .iter()
            .map(|c| self.algebra.element(c))
            .collect();
        Subspace::span(d, d, &mats)
    }

    /// Distance of `m` from `M_s(A)` (relative).
    pub fn spectral_defect(&self, m: &CMatrix, s: usize) -> Result<f64> {
        let c = self.algebra.coords(m)?;
        let outside_a = m.dist(&self.algebra.element(&c));
        let basis = &self.spectral_coords()[s];
        let mut proj = zero_coords(self.dim());
        for q in basis {
            let h: C64 = q.iter().zip(&c).map(|(a, b)| a.conj() * b).sum();
            axpy_coords(&mut proj, h, q);
        }
        let inside = coords_dist_sq(&proj, &c).sqrt();
        Ok((outside_a + inside) / (1.0 + m.frobenius()))
    }

    /// `u∗a = (id⊗ω_u)(δ(a))`
    pub fn fs_action(&self, u: &FSFunction, a: &CMatrix) -> Result<CMatrix> {
        let omega = u.on_translations()?;
        Ok(self.delta(a)?.slice_with(&omega))
    }

    /// Rank of `δ` as a linear map on `A`.
    pub fn injectivity_rank(&self) -> Result<usize> {
        let cols: Vec<Vec<C64>> = self
            .coords
            .iter()
            .map(|legs| legs.iter().flatten().copied().collect())
            .collect();
        if cols.is_empty() {
            return Ok(0);
        }
        rank_of_columns(&cols)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.injectivity_rank()? == self.dim())
    }

    /// Random coordinates of an element of `A`.
    pub fn random_coords(&self, rng: &mut Sampler) -> Vec<C64> {
        rng.vector(self.dim())
    }
}

/// A function on `G`, acting on coaction algebras through the functional
/// `ω_u(x) = Σ_t u(t) x̂(t)` on `C*_r(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FSFunction {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl FSFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("function values must be finite".into()));
        }
        Ok(FSFunction { group, values })
    }

    pub fn constant(group: Arc<FiniteGroup>, z: C64) -> Self {
        let values = vec![z; group.order()];
        FSFunction { group, values }
    }

    pub fn indicator(group: Arc<FiniteGroup>, t: usize) -> Self {
        let mut values = vec![ZERO; group.order()];
        values[t] = ONE;
        FSFunction { group, values }
    }

    pub fn random(group: Arc<FiniteGroup>, rng: &mut Sampler) -> Self {
        let values = rng.vector(group.order());
        FSFunction { group, values }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn pointwise(&self, other: &FSFunction) -> FSFunction {
        FSFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    /// `ω_u(x)` for `x ∈ span{λ_t}`.
    pub fn functional(&self, x: &CMatrix) -> Result<C64> {
        let hat = fourier_scalar(&self.group, x)?;
        Ok(self.values.iter().zip(&hat).map(|(u, h)| u * h).sum())
    }

    /// `ω_u(λ_s)` for every `s`.
    pub fn on_translations(&self) -> Result<Vec<C64>> {
        self.group
            .elements()
            .map(|s| self.functional(&self.group.lambda(s)))
            .collect()
    }
}

/// Residuals of the coaction axioms: images in `A ⊗ span{λ_t}`,
/// multiplicativity, `δ(a*) = δ(a)*`, coassociativity and the density
/// condition `span{δ(A)(1⊗λ_t)} = A ⊗ C*_r(G)`.
pub fn check_coaction(c: &Coaction, tol: f64) -> Certificate {
    let mut cert = Certificate::new("coaction-axioms");
    for a in [
        "coaction-image-span",
        "coaction-homomorphism",
        "coaction-involution",
        "coassociativity",
        "coaction-density",
    ] {
        cert.anchor(a);
    }
    let g = &c.group;
    let k = g.order();
    let dim = c.dim();
    let alg = &c.algebra;
    let scale = (k as f64).sqrt();

    cert.check("image_span", c.span_defect, tol);
    cert.check("algebra_closure", alg.closure_defect().max(alg.adjoint_defect()), tol);

    // Nonzero legs of each δ(a_i), so sparse images stay cheap.
    let support: Vec<Vec<usize>> = c
        .coords
        .iter()
        .map(|legs| {
            (0..k)
                .filter(|&t| legs[t].iter().any(|z| *z != ZERO))
                .collect()
        })
        .collect();

    let mut hom = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = vec![zero_coords(dim); k];
            for &s in &support[i] {
                for &t in &support[j] {
                    let p = alg.mul(&c.coords[i][s], &c.coords[j][t]);
                    axpy_coords(&mut lhs[g.mul(s, t)], ONE, &p);
                }
            }
            let rhs = c.delta_coords(alg.basis_product(i, j));
            let (mut diff, mut norm) = (0.0, 0.0);
            for u in 0..k {
                diff += coords_dist_sq(&lhs[u], &rhs[u]);
                norm += coords_norm_sq(&rhs[u]);
            }
            hom = hom.max(scale * diff.sqrt() / (1.0 + scale * norm.sqrt()));
        }
    }
    cert.check("homomorphism", hom, tol);

    let mut inv = 0.0f64;
    for i in 0..dim {
        let mut adj = vec![zero_coords(dim); k];
        for &t in &support[i] {
            adj[g.inv(t)] = alg.adjoint(&c.coords[i][t]);
        }
        let mut star_i = zero_coords(dim);
        star_i[i] = ONE;
        let rhs = c.delta_coords(&alg.adjoint(&star_i));
        let (mut diff, mut norm) = (0.0, 0.0);
        for u in 0..k {
            diff += coords_dist_sq(&adj[u], &rhs[u]);
            norm += coords_norm_sq(&rhs[u]);
        }
        inv = inv.max(scale * diff.sqrt() / (1.0 + scale * norm.sqrt()));
    }
    cert.check("involution", inv, tol);

    // (δ⊗id)δ(a_i) has coefficient (P_s P_t)[l][i] at a_l⊗λ_s⊗λ_t, where
    // column i of P_t holds the coordinates of the leg at t; (id⊗Δ)δ(a_i)
    // has δ_{st} P_t[l][i]. Each a_l⊗λ_s⊗λ_t has norm |G|.
    let mut coassoc = 0.0f64;
    for i in 0..dim {
        let (mut diff, mut norm) = (0.0, 0.0);
        for t in 0..k {
            let pt = &c.coords[i][t];
            // P_s P_t e_i = Σ_m pt[m] · (leg s of δ(a_m))
            let mut first_legs = vec![zero_coords(dim); k];
            for (m, &z) in pt.iter().enumerate() {
                if z == ZERO {
                    continue;
                }
                for &s in &support[m] {
                    axpy_coords(&mut first_legs[s], z, &c.coords[m][s]);
                }
            }
            for (s, leg) in first_legs.iter().enumerate() {
                if s == t {
                    diff += coords_dist_sq(leg, pt);
                    norm += coords_norm_sq(pt);
                } else {
                    diff += coords_norm_sq(leg);
                }
            }
        }
        let s2 = k as f64;
        coassoc = coassoc.max(s2 * diff.sqrt() / (1.0 + s2 * norm.sqrt()));
    }
    cert.check("coassociativity", coassoc, tol);

    // δ(a_i)(1⊗λ_s) = Σ_t X_t ⊗ λ_{ts}: coordinates at (ts, k).
    let len = dim * k;
    let mut vectors = Vec::with_capacity(dim * k);
    for i in 0..dim {
        for s in 0..k {
            let mut v = vec![ZERO; len];
            for &t in &support[i] {
                let u = g.mul(t, s);
                v[u * dim..(u + 1) * dim].copy_from_slice(&c.coords[i][t]);
            }
            vectors.push(CMatrix::column(&v));
        }
    }
    let density = match Subspace::span(len, 1, &vectors) {
        Ok(span) => {
            let mut worst = 0.0f64;
            for j in 0..len {
                let mut e = vec![ZERO; len];
                e[j] = ONE;
                worst = worst.max(span.residual(&CMatrix::column(&e)).unwrap_or(1.0));
            }
            cert.info("density_rank", span.dim());
            worst
        }
        Err(_) => 1.0,
    };
    cert.check("density", density, tol);
    cert.info("algebra_dim", dim);
    cert.info("injectivity_rank", c.injectivity_rank().unwrap_or(0));
    cert
}

/// `ρ(b) ↦ ρ(b) ⊗ λ_t` for `b ∈ B_t`.
pub fn dual_coaction(ba: &BundleAlgebra) -> Result<Coaction> {
    let g = ba.group().clone();
    let images = ba
        .basis()
        .basis()
        .zip(ba.degrees())
        .map(|(a, &t)| OperatorFunction::delta(g.clone(), t, a.clone()))
        .collect();
    Coaction::new(g, ba.algebra().clone(), images)
}

/// Fourier inversion: `δ(a) = Σ_t E_t(a)⊗λ_t`, `a = Σ_t E_t(a)` when `δ` is
/// injective, and `u∗a = Σ_t E_t(u∗a)` for each `u`.
pub fn coaction_inversion(c: &Coaction, a: &CMatrix, us: &[FSFunction], tol: f64) -> Result<Certificate> {
    let mut cert = Certificate::new("inversion");
    cert.anchor("coaction-fourier-inversion");
    let da = c.delta(a)?;
    let coeffs: Vec<CMatrix> = c.group.elements().map(|t| c.coeff_of_image(&da, t)).collect();
    let reassembled = OperatorFunction::new(c.group.clone(), c.ambient(), coeffs.clone())?;
    cert.check("coaction_reassembly", da.dist(&reassembled), tol);
    let rank = c.injectivity_rank()?;
    cert.info("injectivity_rank", rank);
    if rank == c.dim() {
        let mut sum = CMatrix::zeros(a.rows(), a.cols());
        for e in &coeffs {
            sum += e;
        }
        cert.check("element_reassembly", a.dist(&sum), tol);
    } else {
        cert.note(format!(
            "a = Σ_t E_t(a) not checked: δ has rank {rank} < {}; the reconstruction needs an injective coaction",
            c.dim()
        ));
    }
    for u in us {
        let b = c.fs_action(u, a)?;
        let db = c.delta(&b)?;
        let mut sum = CMatrix::zeros(b.rows(), b.cols());
        for t in c.group.elements() {
            sum += &c.coeff_of_image(&db, t);
        }
        cert.check("fs_reassembly", b.dist(&sum), tol);
    }
    Ok(cert)
}

/// The four coefficient identities (with `Δ ≡ 1`), evaluated in the
/// coordinates of `A`:
/// `E_t(a)* = E_{t⁻¹}(a*)`, `m E_t(a) = E_{st}(m a)`, `E_t(a) m = E_{ts}(a m)`,
/// `E_t(a)E_s(b) = E_{ts}(E_t(a) b) = E_{ts}(a E_s(b))`, for `m ∈ M_s(A)`.
pub fn coefficient_identities_check(
    c: &Coaction,
    a: &CMatrix,
    b: &CMatrix,
    m: &CMatrix,
    s: usize,
    t: usize,
    tol: f64,
) -> Result<Certificate> {
    let defect = c.spectral_defect(m, s)?;
    if defect > DEFAULT_TOL {
        return Err(Error::NotSpectral(s, defect));
    }
    let alg = &c.algebra;
    let ca = alg.coords_checked(a, DEFAULT_TOL)?;
    let cb = alg.coords_checked(b, DEFAULT_TOL)?;
    let cm = alg.coords(m)?;
    let mut cert = Certificate::new("coefficient-identities");
    coefficient_identities_coords(c, &ca, &cb, &cm, s, t, tol, &mut cert);
    Ok(cert)
}

/// As [`coefficient_identities_check`] on coordinates, accumulating into
/// `cert`; `cm` must already lie in `M_s(A)`.
#[allow(clippy::too_many_arguments)]
pub fn coefficient_identities_coords(
    c: &Coaction,
    ca: &[C64],
    cb: &[C64],
    cm: &[C64],
    s: usize,
    t: usize,
    tol: f64,
    cert: &mut Certificate,
) {
    for a in [
        "coefficient-adjoint",
        "spectral-left-module",
        "spectral-right-module",
        "coefficient-products",
    ] {
        cert.anchor(a);
    }
    let g = &c.group;
    let alg = &c.algebra;
    let e = |x: &[C64], u: usize| c.fourier_coeff_coords(x, u);
    let rel = |x: &[C64], y: &[C64]| coords_dist_sq(x, y).sqrt() / (1.0 + vec_norm(y));

    let eta = e(ca, t);
    let lhs = alg.adjoint(&eta);
    let rhs = e(&alg.adjoint(ca), g.inv(t));
    cert.check("adjoint", rel(&lhs, &rhs), tol);

    let lhs = alg.mul(cm, &eta);
    let rhs = e(&alg.mul(cm, ca), g.mul(s, t));
    cert.check("left_module", rel(&lhs, &rhs), tol);

    let lhs = alg.mul(&eta, cm);
    let rhs = e(&alg.mul(ca, cm), g.mul(t, s));
    cert.check("right_module", rel(&lhs, &rhs), tol);

    let esb = e(cb, s);
    let lhs = alg.mul(&eta, &esb);
    let ts = g.mul(t, s);
    let rhs1 = e(&alg.mul(&eta, cb), ts);
    let rhs2 = e(&alg.mul(ca, &esb), ts);
    cert.check("products_left", rel(&lhs, &rhs1), tol);
    cert.check("products_right", rel(&lhs, &rhs2), tol);
}

/// A linear map out of a coaction algebra, given on its orthonormal basis.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    pub images: Vec<CMatrix>,
}

impl AlgebraMap {
    pub fn apply_coords(&self, c: &[C64]) -> CMatrix {
        let (r, k) = self.images.first().map_or((0, 0), |m| m.shape());
        let mut out = CMatrix::zeros(r, k);
        for (z, m) in c.iter().zip(&self.images) {
            if *z != ZERO {
                out.axpy(*z, m);
            }
        }
        out
    }

    pub fn identity(alg: &MatrixAlgebra) -> Self {
        AlgebraMap {
            images: alg.basis().basis_vec(),
        }
    }
}

/// Coefficients and averages commute with an equivariant *-homomorphism.
/// The map is checked first: `NotHomomorphism` or `NotEquivariant`.
pub fn pushforward_check(
    pi: &AlgebraMap,
    ca: &Coaction,
    cb: &Coaction,
    samples: &[CMatrix],
    tol: f64,
) -> Result<Certificate> {
    let aa = &ca.algebra;
    let ab = &cb.algebra;
    if pi.images.len() != aa.dim() {
        return Err(Error::DimensionMismatch("one image per basis element".into()));
    }
    let mut hom = 0.0f64;
    for (i, x) in pi.images.iter().enumerate() {
        let defect = ab.membership_defect(x)?;
        if defect > tol {
            return Err(Error::NotHomomorphism(format!("image of basis element {i} leaves the target algebra")));
        }
        let mut unit = zero_coords(aa.dim());
        unit[i] = ONE;
        let adj = pi.apply_coords(&aa.adjoint(&unit));
        hom = hom.max(adj.dist(&x.adjoint()) / (1.0 + x.frobenius()));
        for (j, y) in pi.images.iter().enumerate() {
            let lhs = pi.apply_coords(aa.basis_product(i, j));
            let rhs = x.matmul(y);
            hom = hom.max(lhs.dist(&rhs) / (1.0 + rhs.frobenius()));
        }
    }
    if hom > tol {
        return Err(Error::NotHomomorphism(format!("defect {hom:.3e}")));
    }
    let mut equiv = 0.0f64;
    for i in 0..aa.dim() {
        let legs: Vec<CMatrix> = ca.coords[i].iter().map(|c| pi.apply_coords(c)).collect();
        let lhs = OperatorFunction::new(cb.group.clone(), cb.ambient(), legs)?;
        let rhs = cb.delta(&pi.images[i])?;
        equiv = equiv.max(lhs.dist(&rhs) / (1.0 + rhs.frobenius()));
    }
    if equiv > tol {
        return Err(Error::NotEquivariant(format!("defect {equiv:.3e}")));
    }
    let mut cert = Certificate::new("pushforward");
    cert.anchor("equivariant-coefficients");
    cert.check("homomorphism", hom, tol);
    cert.check("equivariance", equiv, tol);
    let g = &ca.group;
    for a in samples {
        let c = aa.coords_checked(a, DEFAULT_TOL)?;
        let pa = pi.apply_coords(&c);
        let da = ca.delta(a)?;
        let dpa = cb.delta(&pa)?;
        for t in g.elements() {
            let lhs = cb.coeff_of_image(&dpa, t);
            let rhs = pi.apply_coords(&aa.coords(&ca.coeff_of_image(&da, t))?);
            cert.check("coefficients", lhs.dist(&rhs) / (1.0 + rhs.frobenius()), tol);
        }
        let lhs = dpa.slice(&cb.phi);
        let rhs = pi.apply_coords(&aa.coords(&da.slice(&ca.phi))?);
        cert.check("average", lhs.dist(&rhs) / (1.0 + rhs.frobenius()), tol);
    }
    Ok(cert)
}

/// `W = I_n ⊗ W_G` on `ℂⁿ⊗ℂ^G⊗ℂ^G`, `W_G(δ_s⊗δ_u) = δ_s⊗δ_{su}`, unitary and
/// implementing the dual coaction: `δ(x) = W(x⊗1)W*`.
pub fn w_unitary_check(ba: &BundleAlgebra, tol: f64) -> Result<Certificate> {
    let g = ba.group();
    let k = g.order();
    let n = ba.bundle().ambient_dim();
    let d = n * k;
    let big = d * k;
    let w = |idx: usize| -> usize {
        let (i, rest) = (idx / (k * k), idx % (k * k));
        let (s, u) = (rest / k, rest % k);
        i * k * k + s * k + g.mul(s, u)
    };
    let mut hit = vec![false; big];
    for idx in 0..big {
        hit[w(idx)] = true;
    }
    let missed = hit.iter().filter(|h| !**h).count();
    let mut cert = Certificate::new("w-unitary");
    cert.anchor("multiplicative-unitary");
    cert.check("unitarity", (2.0 * missed as f64).sqrt(), tol);
    let delta = dual_coaction(ba)?;
    let mut worst = 0.0f64;
    for x in ba.basis().basis() {
        let mut conj = CMatrix::zeros(big, big);
        for p in 0..d {
            for q in 0..d {
                let v = x[(p, q)];
                if v == ZERO {
                    continue;
                }
                for u in 0..k {
                    conj[(w(p * k + u), w(q * k + u))] = v;
                }
            }
        }
        let dense = delta.delta(x)?.lambda_op();
        worst = worst.max(conj.dist(&dense) / (1.0 + dense.frobenius()));
    }
    cert.check("implements_dual_coaction", worst, tol);
    Ok(cert)
}

/// JSON form: `{"group": ref, "algebra": [matrix...], "map": {"i": matrix}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoactionJson {
    pub group: serde_json::Value,
    pub algebra: Vec<CMatrix>,
    pub map: std::collections::BTreeMap<String, CMatrix>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balgebra::{build_algebra, coaction_embedding, Section};
    use crate::bundle::group_bundle;
    use crate::groups::cyclic;

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(cyclic(n).unwrap())
    }

    #[test]
    fn trivial_coaction_passes() {
        let t = Coaction::trivial(c(2), Subspace::full(2, 2)).unwrap();
        let cert = check_coaction(&t, 1e-10);
        assert!(cert.passed(), "{cert:?}");
        let a = CMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(t.fourier_coeff(&a, 0).unwrap(), a);
        assert!(t.fourier_coeff(&a, 1).unwrap().is_zero());
        assert_eq!(t.average(&a).unwrap(), a);
    }

    #[test]
    fn comultiplication_passes_and_slices() {
        let g = c(2);
        let cm = Coaction::comultiplication(g.clone()).unwrap();
        assert!(check_coaction(&cm, 1e-10).passed());
        let f = [C64::new(2.0, 0.0), C64::new(-1.0, 0.5)];
        let a = g.lambda_of(&f);
        for t in g.elements() {
            let e = cm.fourier_coeff(&a, t).unwrap();
            assert!(e.dist(&g.lambda(t).scale(f[t])) < 1e-14);
        }
    }

    #[test]
    fn inverse_leg_fails_coassociativity() {
        let g = c(3);
        let bad = Coaction::translation_map(g.clone(), |t| g.inv(t), |t| t).unwrap();
        let cert = check_coaction(&bad, 1e-9);
        assert!(cert.failures().contains(&"coassociativity".to_string()), "{cert:?}");
        assert!(cert.residual("homomorphism").unwrap() < 1e-12);
        // the other placement of the inverse is coassociative
        let g2 = g.clone();
        let other = Coaction::translation_map(g.clone(), |t| t, move |t| g2.inv(t)).unwrap();
        assert!(check_coaction(&other, 1e-9).residual("coassociativity").unwrap() < 1e-12);
    }

    #[test]
    fn dual_coaction_of_group_bundle() {
        let b = Arc::new(group_bundle(c(2)));
        let ba = build_algebra(b.clone()).unwrap();
        let d = dual_coaction(&ba).unwrap();
        assert!(check_coaction(&d, 1e-10).passed());
        let g = b.group().clone();
        let m1 = d.spectral_subspace(1).unwrap();
        assert_eq!(m1.dim(), 1);
        assert!(m1.contains(&g.lambda(1).kron(&g.lambda(1)), 1e-12).unwrap());
        let xi = Section::new(b.clone(), vec![CMatrix::identity(2).scale_real(2.0), g.lambda(1)]).unwrap();
        let a = coaction_embedding(&xi);
        let e1 = d.fourier_coeff(&a, 1).unwrap();
        assert!(e1.dist(&g.lambda(1).kron(&g.lambda(1))) < 1e-13);
        let cert = coaction_inversion(&d, &a, &[FSFunction::indicator(g.clone(), 0)], 1e-11).unwrap();
        assert!(cert.passed(), "{cert:?}");
        let w = w_unitary_check(&ba, 1e-12).unwrap();
        assert!(w.passed(), "{w:?}");
        assert_eq!(w.residual("implements_dual_coaction"), Some(0.0));
    }

    #[test]
    fn coefficient_identities_on_c3() {
        let g = c(3);
        let ba = build_algebra(Arc::new(group_bundle(g.clone()))).unwrap();
        let d = dual_coaction(&ba).unwrap();
        let mut rng = Sampler::new(9);
        for s in g.elements() {
            for t in g.elements() {
                let a = d.algebra().element(&rng.vector(3));
                let b = d.algebra().element(&rng.vector(3));
                let m = g.lambda(s).kron(&g.lambda(s));
                let cert = coefficient_identities_check(&d, &a, &b, &m, s, t, 1e-11).unwrap();
                assert!(cert.passed(), "{cert:?}");
            }
        }
        let a = d.algebra().element(&rng.vector(3));
        assert!(matches!(
            coefficient_identities_check(&d, &a, &a, &a, 1, 0, 1e-11),
            Err(Error::NotSpectral(1, _))
        ));
    }

    #[test]
    fn fs_action_by_constant_one_is_identity() {
        let g = c(3);
        let ba = build_algebra(Arc::new(group_bundle(g.clone()))).unwrap();
        let d = dual_coaction(&ba).unwrap();
        let a = d.algebra().element(&[C64::new(1.0, 2.0), C64::new(0.5, 0.0), C64::new(0.0, -1.0)]);
        let one = FSFunction::constant(g, ONE);
        assert!(d.fs_action(&one, &a).unwrap().dist(&a) < 1e-13);
    }

    #[test]
    fn identity_pushforward_is_exact() {
        let g = c(2);
        let cm = Coaction::comultiplication(g.clone()).unwrap();
        let id = AlgebraMap::identity(cm.algebra());
        let cert = pushforward_check(&id, &cm, &cm, &[g.lambda(1)], 1e-12).unwrap();
        assert!(cert.passed());
    }
}
