//! Named verification suites over targets (fixtures or user JSON), each
//! producing one certificate. Every random input comes from a stream derived
//! from `(seed, suite, target, purpose)`, so certificates are reproducible.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::abelian::{
    action_from_coaction, coaction_from_action, crossed_product_check, dual_action_on_bundle,
    random_inner_action, reconstruct_bundle, round_trip_defects, spectral_element, spectral_subspace_action,
    CrossedProductInput, DualAction,
};
use crate::balgebra::{
    build_algebra, convolve, integrated_form, involute, l2_inner, BundleAlgebra, FiberRepresentation,
    RegularModel, Section,
};
use crate::bundle::{partial_action_bundle, FellBundle, GlobalAction};
use crate::certificate::{sha256_hex, Certificate};
use crate::coaction::{
    check_coaction, coaction_inversion, coefficient_identities_coords, dual_coaction, pushforward_check,
    w_unitary_check, AlgebraMap, Coaction, FSFunction,
};
use crate::error::{Error, Result};
use crate::fixtures::{self, FixtureId, Kind};
use crate::groups::{convolve_scalar, involute_scalar, right_translate, FiniteGroup};
use crate::harmonic::{
    fourier_operator, fourier_scalar, inversion_check, is_positive_definite, slice_plancherel,
    square_root_factorization, OperatorFunction, PlancherelWeight,
};
use crate::io;
use crate::linalg::{
    herm_eigenvalues, is_psd, op_norm, rank_of_columns, rel_diff, vec_dist, vec_inner, vec_norm, CMatrix,
    Subspace, C64, DEFAULT_TOL, ONE, ZERO,
};
use crate::sampling::Sampler;

/// Relative tolerance of the norm-agreement and C*-identity checks.
pub const NORM_TOL: f64 = 1e-8;
/// Tolerance of the Plancherel-weight identities.
pub const PLANCHEREL_TOL: f64 = 1e-12;
/// Tolerance of the square-root reconstruction.
pub const SQRT_TOL: f64 = 1e-8;
/// Operator functions per group in the positivity suite.
pub const POSITIVITY_FUNCTIONS: usize = 200;
const CONSTRUCTED_CASES: usize = 20;
/// Fourier–Stieltjes functions per element in the inversion suite.
pub const INVERSION_FUNCTIONS: usize = 20;
const VECTOR_STATES: usize = 20;
const RANDOM_INNER_ACTIONS: usize = 20;
/// Block Gram matrices above this size are not diagonalized.
const GRAM_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: DEFAULT_TOL,
            seed: 0,
            samples: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Plancherel,
    FourierScalar,
    PositiveDefinite,
    DualCoaction,
    CoefficientIdentities,
    Inversion,
    FsAction,
    WUnitary,
    AbelianDictionary,
    Reconstruct,
    CrossedProduct,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Plancherel,
        Suite::FourierScalar,
        Suite::PositiveDefinite,
        Suite::DualCoaction,
        Suite::CoefficientIdentities,
        Suite::Inversion,
        Suite::FsAction,
        Suite::WUnitary,
        Suite::AbelianDictionary,
        Suite::Reconstruct,
        Suite::CrossedProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Plancherel => "plancherel",
            Suite::FourierScalar => "fourier-scalar",
            Suite::PositiveDefinite => "positive-definite",
            Suite::DualCoaction => "dual-coaction",
            Suite::CoefficientIdentities => "coefficient-identities",
            Suite::Inversion => "inversion",
            Suite::FsAction => "fs-action",
            Suite::WUnitary => "w-unitary",
            Suite::AbelianDictionary => "abelian-dictionary",
            Suite::Reconstruct => "reconstruct",
            Suite::CrossedProduct => "crossed-product",
        }
    }

    /// Suites that only read the group of the target.
    pub fn is_group_level(self) -> bool {
        matches!(self, Suite::Plancherel | Suite::FourierScalar | Suite::PositiveDefinite)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::BadParameter(format!("unknown suite '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// A bundle with its algebra and dual coaction, built once.
#[derive(Debug)]
pub struct BundleTarget {
    pub fixture: Option<FixtureId>,
    pub bundle: Arc<FellBundle>,
    pub axioms: Certificate,
    /// `None` when the axioms fail.
    pub built: Option<(BundleAlgebra, Coaction)>,
}

#[derive(Debug)]
pub enum TargetData {
    Bundle(Box<BundleTarget>),
    Coaction(Box<Coaction>),
    Action(Box<DualAction>),
}

#[derive(Debug)]
pub struct Target {
    pub name: String,
    pub digest: String,
    pub data: TargetData,
}

fn digest(v: &serde_json::Value) -> String {
    sha256_hex(serde_json::to_string(v).expect("JSON values serialize").as_bytes())
}

impl Target {
    pub fn from_bundle(name: impl Into<String>, bundle: FellBundle, fixture: Option<FixtureId>) -> Result<Self> {
        let digest = digest(&io::bundle_to_json(&bundle));
        let bundle = Arc::new(bundle);
        let axioms = bundle.check_axioms(DEFAULT_TOL);
        let built = if axioms.passed() {
            let ba = build_algebra(bundle.clone())?;
            let c = dual_coaction(&ba)?;
            Some((ba, c))
        } else {
            None
        };
        Ok(Target {
            name: name.into(),
            digest,
            data: TargetData::Bundle(Box::new(BundleTarget {
                fixture,
                bundle,
                axioms,
                built,
            })),
        })
    }

    pub fn fixture(id: FixtureId) -> Result<Self> {
        Target::from_bundle(id.to_string(), fixtures::build(id)?, Some(id))
    }

    pub fn from_coaction(name: impl Into<String>, c: Coaction) -> Self {
        Target {
            name: name.into(),
            digest: digest(&io::coaction_to_json(&c)),
            data: TargetData::Coaction(Box::new(c)),
        }
    }

    pub fn from_action(name: impl Into<String>, a: DualAction) -> Self {
        Target {
            name: name.into(),
            digest: digest(&io::action_to_json(&a)),
            data: TargetData::Action(Box::new(a)),
        }
    }

    pub fn gauge_m2() -> Result<Self> {
        Ok(Target::from_action(fixtures::GAUGE_M2, fixtures::gauge_m2()?))
    }

    /// A fixture name or `gauge-m2`.
    pub fn named(name: &str) -> Result<Self> {
        if name == fixtures::GAUGE_M2 {
            Target::gauge_m2()
        } else {
            Target::fixture(name.parse()?)
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        match &self.data {
            TargetData::Bundle(b) => b.bundle.group(),
            TargetData::Coaction(c) => c.group(),
            TargetData::Action(a) => a.base(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Ran(Certificate),
    Skipped(String),
}

struct Run<'a> {
    suite: Suite,
    target: &'a Target,
    cfg: &'a Config,
}

impl Run<'_> {
    fn rng(&self, purpose: &str) -> Sampler {
        Sampler::derived(
            self.cfg.seed,
            &format!("{}/{}/{purpose}", self.suite.name(), self.target.name),
        )
    }

    fn cert(&self) -> Certificate {
        let mut c = Certificate::new(self.suite.name()).with_target(self.target.name.clone());
        c.seed = self.cfg.seed;
        c.samples = self.cfg.samples;
        c.input_digest = self.target.digest.clone();
        c
    }
}

fn rel(a: &CMatrix, b: &CMatrix) -> f64 {
    a.dist(b) / (1.0 + b.frobenius())
}

fn rel_vec(a: &[C64], b: &[C64]) -> f64 {
    vec_dist(a, b) / (1.0 + vec_norm(b))
}

fn rel_scalar(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// Run one suite on one target.
pub fn run(suite: Suite, target: &Target, cfg: &Config) -> Result<Outcome> {
    let r = Run { suite, target, cfg };
    let abelian = target.group().is_abelian();
    if matches!(suite, Suite::AbelianDictionary | Suite::Reconstruct) && !abelian {
        return Ok(Outcome::Skipped(format!(
            "group {} is not abelian",
            target.group().name()
        )));
    }
    let cert = match suite {
        Suite::Plancherel => plancherel_suite(&r),
        Suite::FourierScalar => fourier_scalar_suite(&r),
        Suite::PositiveDefinite => positive_definite_suite(&r),
        Suite::DualCoaction | Suite::WUnitary | Suite::CrossedProduct => {
            let TargetData::Bundle(bt) = &target.data else {
                return Ok(Outcome::Skipped("needs a bundle target".into()));
            };
            match suite {
                Suite::DualCoaction => dual_coaction_suite(&r, bt),
                Suite::WUnitary => with_built(&r, bt, |ba, _| w_unitary_check(ba, cfg.tol)),
                _ => {
                    let Some(id) = bt.fixture else {
                        return Ok(Outcome::Skipped(
                            "needs a fixture bundle built from an action".into(),
                        ));
                    };
                    crossed_product_suite(&r, id)
                }
            }
        }
        _ => {
            let owned;
            let c: &Coaction = match &target.data {
                TargetData::Bundle(bt) => match &bt.built {
                    Some((_, c)) => c,
                    None => return Ok(Outcome::Ran(failed_axioms(&r, bt))),
                },
                TargetData::Coaction(c) => c,
                TargetData::Action(a) => {
                    owned = coaction_from_action(a)?;
                    &owned
                }
            };
            match suite {
                Suite::CoefficientIdentities => coefficient_identities_suite(&r, c),
                Suite::Inversion => inversion_suite(&r, c),
                Suite::FsAction => fs_action_suite(&r, c),
                Suite::AbelianDictionary => abelian_dictionary_suite(&r, c),
                Suite::Reconstruct => reconstruct_suite(&r, c),
                _ => unreachable!("bundle suites are handled above"),
            }
        }
    }?;
    Ok(Outcome::Ran(cert))
}

fn failed_axioms(r: &Run<'_>, bt: &BundleTarget) -> Certificate {
    let mut cert = r.cert();
    cert.absorb("axioms", &bt.axioms);
    cert.note("the bundle fails the Fell bundle axioms; nothing else was checked");
    cert
}

fn with_built(
    r: &Run<'_>,
    bt: &BundleTarget,
    f: impl FnOnce(&BundleAlgebra, &Coaction) -> Result<Certificate>,
) -> Result<Certificate> {
    match &bt.built {
        Some((ba, c)) => {
            let inner = f(ba, c)?;
            let mut cert = r.cert();
            cert.absorb("", &inner);
            Ok(cert)
        }
        None => Ok(failed_axioms(r, bt)),
    }
}

// ---------------------------------------------------------------------------
// Group-level suites

fn plancherel_suite(r: &Run<'_>) -> Result<Certificate> {
    let g = r.target.group();
    let k = g.order();
    let phi = PlancherelWeight::new(g.clone());
    let mut cert = r.cert();
    for a in [
        "plancherel-weight",
        "plancherel-trace-form",
        "convolution-inner-product",
        "plancherel-traciality",
    ] {
        cert.anchor(a);
    }
    // exact on translations
    let mut worst = 0.0f64;
    for s in g.elements() {
        let expected = if s == g.identity() { ONE } else { ZERO };
        worst = worst.max((phi.eval(&g.lambda(s))? - expected).norm());
    }
    cert.check("basis_functions", worst, 0.0);
    let modular = g.elements().map(|t| (g.modular(t) - 1.0).abs()).fold(0.0, f64::max);
    cert.check("unimodular", modular, 0.0);

    let mut rng = r.rng("functions");
    for _ in 0..r.cfg.samples {
        let f = rng.vector(k);
        let h = rng.vector(k);
        let x = g.lambda_of(&f);
        let y = g.lambda_of(&h);
        let val = phi.eval(&x)?;
        cert.check("value_at_identity", rel_scalar(val, f[g.identity()]), PLANCHEREL_TOL);
        cert.check("trace_form", rel_scalar(val, phi.trace_form(&x)?), PLANCHEREL_TOL);
        let scale = 1.0 + vec_norm(&f) * vec_norm(&h);
        let xy = phi.eval(&x.matmul(&y))?;
        let yx = phi.eval(&y.matmul(&x))?;
        cert.check("traciality", (xy - yx).norm() / scale, PLANCHEREL_TOL);
        // (f* ∗ h)(t) = ⟨f|V_t h⟩
        let conv = convolve_scalar(g, &involute_scalar(g, &f), &h);
        let mut eq = 0.0f64;
        for t in g.elements() {
            let vt = right_translate(g, &h, t);
            eq = eq.max((conv[t] - vec_inner(&f, &vt)).norm());
        }
        cert.check("convolution_inner_product", eq / scale, PLANCHEREL_TOL);
        let ip = phi.eval(&x.adjoint().matmul(&y))?;
        cert.check("weight_inner_product", (ip - vec_inner(&f, &h)).norm() / scale, PLANCHEREL_TOL);
    }
    Ok(cert)
}

fn random_operator_function(g: &Arc<FiniteGroup>, n: usize, rng: &mut Sampler) -> OperatorFunction {
    let values = g.elements().map(|_| rng.matrix(n, n)).collect();
    OperatorFunction::new(g.clone(), n, values).expect("one value per element")
}

fn fourier_scalar_suite(r: &Run<'_>) -> Result<Certificate> {
    let g = r.target.group();
    let k = g.order();
    let mut cert = r.cert();
    for a in [
        "scalar-fourier-transform",
        "operator-fourier-coefficients",
        "operator-fourier-inversion",
        "vector-state-slices",
    ] {
        cert.anchor(a);
    }
    let mut rng = r.rng("functions");
    for _ in 0..r.cfg.samples {
        let f = rng.vector(k);
        let h = rng.vector(k);
        let x = g.lambda_of(&f);
        let y = g.lambda_of(&h);
        cert.check("round_trip", rel_vec(&fourier_scalar(g, &x)?, &f), r.cfg.tol);
        let conv = convolve_scalar(g, &f, &h);
        cert.check("multiplicative", rel_vec(&fourier_scalar(g, &x.matmul(&y))?, &conv), r.cfg.tol);
        let inv = involute_scalar(g, &f);
        cert.check("adjoint", rel_vec(&fourier_scalar(g, &x.adjoint())?, &inv), r.cfg.tol);
    }
    let n = 2;
    let mut rng = r.rng("operator-functions");
    for _ in 0..r.cfg.samples {
        let f = random_operator_function(g, n, &mut rng);
        let a = f.lambda_op();
        let mut worst = 0.0f64;
        for t in g.elements() {
            worst = worst.max(rel(&fourier_operator(g, &a, t)?, f.value(t)));
        }
        cert.check("operator_coefficients", worst, r.cfg.tol);
        let inv = inversion_check(g, &a, r.cfg.tol)?;
        cert.require(
            "reassembly_span_detected",
            inv.informational.get("classification").and_then(|v| v.as_str()) == Some("inside reassembly span"),
        );
        cert.absorb("inversion", &inv);
    }
    if k > 1 {
        let outside = CMatrix::unit(n * k, n * k, 0, 0);
        let inv = inversion_check(g, &outside, r.cfg.tol)?;
        cert.require(
            "outside_span_detected",
            inv.informational.get("classification").and_then(|v| v.as_str()) == Some("outside reassembly span"),
        );
    }
    // φ((θ⊗id)(a)) = θ((id⊗φ)(a)) for vector states θ and a ≥ 0
    let mut rng = r.rng("vector-states");
    for _ in 0..VECTOR_STATES {
        let x = random_operator_function(g, n, &mut rng).lambda_op();
        let a = x.adjoint().matmul(&x);
        let v = rng.unit_vector(n);
        let mut theta_a = CMatrix::zeros(k, k);
        for s in 0..k {
            for u in 0..k {
                let mut z = ZERO;
                for i in 0..n {
                    for j in 0..n {
                        z += v[i].conj() * a[(i * k + s, j * k + u)] * v[j];
                    }
                }
                theta_a[(s, u)] = z;
            }
        }
        let lhs = crate::harmonic::plancherel(g, &theta_a)?;
        let slice = slice_plancherel(g, &a)?;
        let rhs = vec_inner(&v, &slice.apply(&v));
        cert.check("vector_state_slices", rel_scalar(lhs, rhs), r.cfg.tol);
        cert.require("vector_state_positive", lhs.re >= -r.cfg.tol && lhs.im.abs() <= r.cfg.tol * (1.0 + lhs.norm()));
    }
    Ok(cert)
}

/// `(h + h*)/2`, so that `f(t⁻¹) = f(t)*`.
fn hermitian_symmetric(f: &OperatorFunction) -> OperatorFunction {
    let mut h = f.clone();
    h.axpy(ONE, &f.adjoint());
    h.scale(C64::new(0.5, 0.0))
}

fn positive_definite_suite(r: &Run<'_>) -> Result<Certificate> {
    let g = r.target.group();
    let n = 2;
    let tol = r.cfg.tol;
    let mut cert = r.cert();
    cert.anchor("positive-definite-criterion");
    cert.anchor("square-root-reconstruction");
    let mut rng = r.rng("operator-functions");
    let mut disagreements = 0usize;
    let mut constructed_psd_ok = true;
    let mut constructed_indefinite_ok = true;
    let mut positive = 0usize;
    for k in 0..POSITIVITY_FUNCTIONS {
        let f = if k < CONSTRUCTED_CASES {
            let h = random_operator_function(g, n, &mut rng);
            h.adjoint().mul(&h)
        } else {
            let h = hermitian_symmetric(&random_operator_function(g, n, &mut rng));
            if k < 2 * CONSTRUCTED_CASES {
                // centre the spectrum of the Gram matrix at 0
                let eig = herm_eigenvalues(&h.gram_matrix())?;
                let mid = (eig[0] + eig[eig.len() - 1]) / 2.0;
                let mut shifted = h;
                shifted.axpy(
                    C64::new(-mid, 0.0),
                    &OperatorFunction::delta(g.clone(), g.identity(), CMatrix::identity(n)),
                );
                shifted
            } else {
                h
            }
        };
        let by_operator = is_psd(&f.lambda_op(), tol)?;
        let by_gram = is_positive_definite(&f, tol)?;
        if by_operator != by_gram {
            disagreements += 1;
        }
        if by_gram {
            positive += 1;
        }
        if k < CONSTRUCTED_CASES {
            constructed_psd_ok &= by_gram && by_operator;
        } else if k < 2 * CONSTRUCTED_CASES {
            constructed_indefinite_ok &= !by_gram && !by_operator;
        }
    }
    cert.check("disagreements", disagreements as f64, 0.0);
    cert.require("constructed_positive_cases", constructed_psd_ok);
    cert.require("constructed_indefinite_cases", constructed_indefinite_ok);
    cert.info("functions", POSITIVITY_FUNCTIONS);
    cert.info("positive_definite", positive);

    let mut rng = r.rng("square-roots");
    for _ in 0..CONSTRUCTED_CASES {
        let h = rng.vector(g.order());
        let f = convolve_scalar(g, &involute_scalar(g, &h), &h);
        let (_, root_res, conv_res) = square_root_factorization(g, &f)?;
        let scale = 1.0 + vec_norm(&f);
        cert.check("square_root", root_res / scale, SQRT_TOL);
        cert.check("square_root_convolution", conv_res / scale, SQRT_TOL);
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Bundle suites

fn dual_coaction_suite(r: &Run<'_>, bt: &BundleTarget) -> Result<Certificate> {
    let mut cert = r.cert();
    cert.absorb("axioms", &bt.axioms);
    let Some((ba, c)) = &bt.built else {
        cert.note("the bundle fails the Fell bundle axioms; nothing else was checked");
        return Ok(cert);
    };
    for a in [
        "dual-coaction-integrable",
        "dual-fourier-coefficients",
        "spectral-direct-sum",
        "full-equals-reduced-norm",
    ] {
        cert.anchor(a);
    }
    let tol = r.cfg.tol;
    let bundle = &bt.bundle;
    let g = bundle.group();
    let e = g.identity();
    cert.require("embedding_injective", ba.dim() == bundle.total_dim());
    cert.info("algebra_dim", ba.dim());
    cert.info("representation_dim", ba.rep_dim());
    cert.absorb("coaction", &check_coaction(c, tol));

    let model = RegularModel::new(bundle.clone())?;
    let generators = FiberRepresentation::generator_map(bundle.clone())?;
    cert.info("regular_model_dim", model.dim());
    let mut rng = r.rng("sections");
    for k in 0..r.cfg.samples {
        let xi = ba.random_section(&mut rng);
        let eta = ba.random_section(&mut rng);
        let rx = ba.embed(&xi);
        let dx = c.delta(&rx)?;

        let av = dx.slice(c.weight());
        cert.check("average", av.dist(&ba.generator_map(e, xi.value(e))), tol);
        let mut coeff = 0.0f64;
        let mut expected = OperatorFunction::zero(g.clone(), ba.rep_dim());
        for t in g.elements() {
            let gt = ba.generator_map(t, xi.value(t));
            coeff = coeff.max(c.coeff_of_image(&dx, t).dist(&gt));
            expected.axpy(ONE, &OperatorFunction::delta(g.clone(), t, gt));
        }
        cert.check("coefficients", coeff, tol);
        cert.check("dual_image", dx.dist(&expected) / (1.0 + expected.frobenius()), tol);
        let fixed = OperatorFunction::delta(g.clone(), e, av.clone());
        cert.check("average_is_fixed", c.delta(&av)?.dist(&fixed) / (1.0 + fixed.frobenius()), tol);

        let norm_rho = op_norm(&rx)?;
        let norm_reg = op_norm(&model.operator(&xi)?)?;
        cert.check("norm_agreement", rel_diff(norm_rho, norm_reg), NORM_TOL);
        if k < 10 {
            let star = op_norm(&rx.adjoint().matmul(&rx))?;
            cert.check("cstar_identity", rel_diff(star, norm_rho * norm_rho), NORM_TOL);
            // E_e(a*a) ≥ 0
            let pos = rx.adjoint().matmul(&rx);
            cert.require("average_positive", is_psd(&c.average(&pos)?, tol)?);
        }

        let ry = ba.embed(&eta);
        cert.check("convolution", rel(&ba.embed(&convolve(&xi, &eta)?), &rx.matmul(&ry)), tol);
        cert.check("involution", rel(&ba.embed(&involute(&xi)?), &rx.adjoint()), tol);
        let ip = l2_inner(&xi, &xi)?;
        cert.check("inner_product_in_unit_fiber", bundle.fiber(e).residual(&ip)? / (1.0 + ip.frobenius()), tol);
        cert.check("integrated_form", rel(&integrated_form(&generators, &xi)?, &rx), tol);
        cert.check("section_recovery", ba.section_of(&rx)?.dist(&xi), tol);
    }

    // ‖b ⊗ λ_t‖ = ‖b‖
    let mut rng = r.rng("generators");
    for t in g.elements() {
        let fib = bundle.fiber(t);
        if fib.is_zero() {
            continue;
        }
        let b = fib.combine(&rng.vector(fib.dim()));
        cert.check(
            "generator_isometry",
            rel_diff(op_norm(&ba.generator_map(t, &b))?, op_norm(&b)?),
            NORM_TOL,
        );
    }

    // spectral structure
    let spectral = c.spectral_coords();
    let dims: Vec<usize> = spectral.iter().map(Vec::len).collect();
    cert.require("spectral_dimensions", dims == bundle.fiber_dims());
    cert.require("spectral_dimensions_sum", dims.iter().sum::<usize>() == c.dim());
    let mut independent = true;
    for s in g.elements() {
        for t in (s + 1)..g.order() {
            if dims[s] == 0 || dims[t] == 0 {
                continue;
            }
            let cols: Vec<Vec<C64>> = spectral[s].iter().chain(&spectral[t]).cloned().collect();
            independent &= rank_of_columns(&cols)? == dims[s] + dims[t];
        }
    }
    cert.require("spectral_intersections_zero", independent);
    cert.info("spectral_dims", dims);
    let mut proj = 0.0f64;
    for (i, &deg) in ba.degrees().iter().enumerate() {
        let mut unit = vec![ZERO; c.dim()];
        unit[i] = ONE;
        for t in g.elements() {
            let et = c.fourier_coeff_coords(&unit, t);
            let want = if t == deg { unit.clone() } else { vec![ZERO; c.dim()] };
            proj = proj.max(vec_dist(&et, &want));
        }
    }
    cert.check("coefficients_project_onto_fibers", proj, tol);

    // pushforwards: the identity, the regular model and sub-bundles
    let mut rng = r.rng("pushforward");
    let samples: Vec<CMatrix> = (0..r.cfg.samples.min(5))
        .map(|_| ba.embed(&ba.random_section(&mut rng)))
        .collect();
    let id = AlgebraMap::identity(c.algebra());
    cert.absorb("pushforward_identity", &pushforward_check(&id, c, c, &samples, tol)?);
    if let Some(p) = regular_model_pushforward(ba, c, &model, &samples, tol)? {
        cert.absorb("pushforward_regular_model", &p);
    }
    if let Some(id) = bt.fixture.filter(|id| id.kind == Kind::Semidirect) {
        let sub = partial_action_bundle(&fixtures::partial_data(fixtures::fixture_group(id.group)?)?)?;
        let sub_ba = build_algebra(Arc::new(sub))?;
        let sub_c = dual_coaction(&sub_ba)?;
        let incl = AlgebraMap {
            images: sub_c.algebra().basis().basis_vec(),
        };
        let mut rng = r.rng("sub-bundle");
        let sub_samples: Vec<CMatrix> = (0..r.cfg.samples.min(5))
            .map(|_| sub_ba.embed(&sub_ba.random_section(&mut rng)))
            .collect();
        cert.absorb(
            "pushforward_sub_bundle",
            &pushforward_check(&incl, &sub_c, c, &sub_samples, tol.min(1e-11))?,
        );
    }
    Ok(cert)
}

/// `ρ(ξ) ↦ λ_B(ξ)` into the regular model, graded by `λ_B(b_t) ↦ λ_B(b_t) ⊗ λ_t`.
fn regular_model_pushforward(
    ba: &BundleAlgebra,
    c: &Coaction,
    model: &RegularModel,
    samples: &[CMatrix],
    tol: f64,
) -> Result<Option<Certificate>> {
    let g = ba.group();
    if model.dim() == 0 {
        return Ok(None);
    }
    let mut homogeneous = Vec::new();
    for t in g.elements() {
        for b in ba.bundle().fiber(t).basis() {
            let xi = Section::delta(ba.bundle().clone(), t, b.clone())?;
            homogeneous.push((t, model.operator(&xi)?));
        }
    }
    let target = Coaction::from_grading(g.clone(), &homogeneous)?;
    let images = c
        .algebra()
        .basis()
        .basis()
        .map(|a| model.operator(&ba.section_of(a)?))
        .collect::<Result<Vec<_>>>()?;
    let pi = AlgebraMap { images };
    let mapped: Vec<CMatrix> = samples.to_vec();
    Ok(Some(pushforward_check(&pi, c, &target, &mapped, tol)?))
}

fn crossed_product_suite(r: &Run<'_>, id: FixtureId) -> Result<Certificate> {
    let g = fixtures::fixture_group(id.group)?;
    let inner = match id.kind {
        Kind::Group => {
            let a = GlobalAction::trivial(g, Subspace::full(1, 1))?;
            crossed_product_check(CrossedProductInput::Global(&a), r.cfg.tol)?
        }
        Kind::Semidirect => {
            let a = fixtures::coset_action(g)?;
            crossed_product_check(CrossedProductInput::Global(&a), r.cfg.tol)?
        }
        Kind::Partial => {
            let p = fixtures::partial_data(g)?;
            crossed_product_check(CrossedProductInput::Partial(&p), r.cfg.tol)?
        }
    };
    let mut cert = r.cert();
    cert.absorb("", &inner);
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Coaction suites

fn random_spectral(c: &Coaction, s: usize, rng: &mut Sampler) -> Vec<C64> {
    let mut m = vec![ZERO; c.dim()];
    for q in &c.spectral_coords()[s] {
        let z = rng.c64();
        for (o, v) in m.iter_mut().zip(q) {
            *o += z * v;
        }
    }
    m
}

/// Distance of coordinates `x` from `M_s(A)`, through the coefficients.
fn spectral_coord_defect(c: &Coaction, x: &[C64], s: usize) -> f64 {
    let mut worst = 0.0f64;
    for t in c.group().elements() {
        let et = c.fourier_coeff_coords(x, t);
        let d = if t == s { vec_dist(&et, x) } else { vec_norm(&et) };
        worst = worst.max(d);
    }
    worst / (1.0 + vec_norm(x))
}

fn coefficient_identities_suite(r: &Run<'_>, c: &Coaction) -> Result<Certificate> {
    let g = c.group();
    let k = g.order();
    let tol = r.cfg.tol;
    let alg = c.algebra();
    let mut cert = r.cert();
    let mut rng = r.rng("tuples");
    let tuples = 2 * r.cfg.samples;
    for _ in 0..tuples {
        let ca = c.random_coords(&mut rng);
        let cb = c.random_coords(&mut rng);
        let s = rng.index(k);
        let t = rng.index(k);
        let cm = random_spectral(c, s, &mut rng);
        cert.check("spectral_membership", spectral_coord_defect(c, &cm, s), tol);
        coefficient_identities_coords(c, &ca, &cb, &cm, s, t, tol, &mut cert);
        // M_s M_t ⊆ M_st and M_s* = M_{s⁻¹}
        let cn = random_spectral(c, t, &mut rng);
        cert.check("spectral_products", spectral_coord_defect(c, &alg.mul(&cm, &cn), g.mul(s, t)), tol);
        cert.check("spectral_adjoints", spectral_coord_defect(c, &alg.adjoint(&cm), g.inv(s)), tol);
    }
    cert.info("tuples", tuples);

    // t ↦ E_t(a*a) is positive definite
    let d = c.ambient();
    if k * d <= GRAM_LIMIT {
        let mut rng = r.rng("positivity");
        for _ in 0..r.cfg.samples.min(5) {
            let ca = c.random_coords(&mut rng);
            let cp = alg.mul(&alg.adjoint(&ca), &ca);
            let values = g
                .elements()
                .map(|t| alg.element(&c.fourier_coeff_coords(&cp, t)))
                .collect();
            let f = OperatorFunction::new(g.clone(), d, values)?;
            cert.require("coefficients_positive_definite", is_positive_definite(&f, tol)?);
        }
    } else {
        cert.note(format!(
            "positive-definiteness of t ↦ E_t(a*a) not checked: block Gram matrix of size {} exceeds {GRAM_LIMIT}",
            k * d
        ));
    }
    Ok(cert)
}

fn inversion_suite(r: &Run<'_>, c: &Coaction) -> Result<Certificate> {
    let g = c.group();
    let tol = r.cfg.tol;
    let mut cert = r.cert();
    if !matches!(r.target.data, TargetData::Bundle(_)) {
        cert.absorb("coaction", &check_coaction(c, tol));
    }
    for a in c.algebra().basis().basis() {
        cert.absorb("basis", &coaction_inversion(c, a, &[], tol)?);
    }
    let mut rng = r.rng("elements");
    for _ in 0..r.cfg.samples.min(5) {
        let a = c.algebra().element(&c.random_coords(&mut rng));
        let us: Vec<FSFunction> = (0..INVERSION_FUNCTIONS)
            .map(|_| FSFunction::random(g.clone(), &mut rng))
            .collect();
        cert.absorb("sampled", &coaction_inversion(c, &a, &us, tol)?);
    }
    cert.info("fs_functions_per_element", INVERSION_FUNCTIONS);
    if let TargetData::Bundle(bt) = &r.target.data {
        if let Some((ba, _)) = &bt.built {
            let mut rng = r.rng("sections");
            for _ in 0..r.cfg.samples.min(5) {
                let rx = ba.embed(&ba.random_section(&mut rng));
                let inv = inversion_check(g, &rx, tol)?;
                cert.absorb("operator", &inv);
            }
        }
    }
    Ok(cert)
}

fn fs_action_suite(r: &Run<'_>, c: &Coaction) -> Result<Certificate> {
    let g = c.group();
    let tol = r.cfg.tol;
    let mut cert = r.cert();
    cert.anchor("fourier-stieltjes-module");
    let one = FSFunction::constant(g.clone(), ONE);
    let mut rng = r.rng("elements");
    for _ in 0..r.cfg.samples.min(10) {
        let a = c.algebra().element(&c.random_coords(&mut rng));
        let u = FSFunction::random(g.clone(), &mut rng);
        let v = FSFunction::random(g.clone(), &mut rng);
        cert.check("unit_acts_trivially", rel(&c.fs_action(&one, &a)?, &a), tol);
        let coeffs = c.fourier_coeffs(&a)?;
        for t in g.elements() {
            let it = FSFunction::indicator(g.clone(), t);
            cert.check("indicators_give_coefficients", rel(&c.fs_action(&it, &a)?, &coeffs[t]), tol);
        }
        let va = c.fs_action(&v, &a)?;
        let lhs = c.fs_action(&u.pointwise(&v), &a)?;
        cert.check("module_law", rel(&lhs, &c.fs_action(&u, &va)?), tol);
        let ua = c.fs_action(&u, &a)?;
        let ucoeffs = c.fourier_coeffs(&ua)?;
        for t in g.elements() {
            cert.check(
                "coefficient_scaling",
                rel(&ucoeffs[t], &coeffs[t].scale(u.values()[t])),
                tol,
            );
        }
    }
    if let TargetData::Bundle(bt) = &r.target.data {
        if let Some((ba, _)) = &bt.built {
            let mut rng = r.rng("sections");
            for _ in 0..r.cfg.samples.min(10) {
                let xi = ba.random_section(&mut rng);
                let u = FSFunction::random(g.clone(), &mut rng);
                let lhs = c.fs_action(&u, &ba.embed(&xi))?;
                let rhs = ba.embed(&xi.pointwise(u.values()));
                cert.check("pointwise_on_sections", rel(&lhs, &rhs), tol);
            }
        }
    }
    Ok(cert)
}

fn abelian_dictionary_suite(r: &Run<'_>, c: &Coaction) -> Result<Certificate> {
    let g = c.group();
    let tol = r.cfg.tol;
    let mut cert = r.cert();
    cert.anchor("action-coaction-correspondence");
    cert.anchor("spectral-elements-are-coefficients");
    if !matches!(r.target.data, TargetData::Bundle(_)) {
        cert.absorb("coaction", &check_coaction(c, tol));
    }
    let (cd, ad) = round_trip_defects(c)?;
    cert.check("coaction_round_trip", cd, tol);
    cert.check("action_round_trip", ad, tol);
    let beta = action_from_coaction(c)?;
    let mut rng = r.rng("elements");
    for _ in 0..r.cfg.samples.min(10) {
        let a = c.algebra().element(&c.random_coords(&mut rng));
        let coeffs = c.fourier_coeffs(&a)?;
        for t in g.elements() {
            cert.check("spectral_elements_vs_coefficients", rel(&spectral_element(&beta, &a, t)?, &coeffs[t]), tol);
        }
    }
    for t in g.elements() {
        let lhs = spectral_subspace_action(&beta, t)?;
        let rhs = c.spectral_subspace(t)?;
        cert.check("spectral_subspaces_agree", lhs.equality_defect(&rhs)?, tol);
    }
    if let TargetData::Bundle(bt) = &r.target.data {
        if let Some((ba, _)) = &bt.built {
            let mut rng = r.rng("sections");
            let sections: Vec<Section> = (0..r.cfg.samples.min(20)).map(|_| ba.random_section(&mut rng)).collect();
            cert.absorb("dual_action", &dual_action_on_bundle(ba, &sections, tol)?);
            if bt.fixture.is_some_and(|id| id.kind == Kind::Group) {
                let mut rng = r.rng("inner-actions");
                for _ in 0..RANDOM_INNER_ACTIONS {
                    let a = random_inner_action(g.clone(), 4, &mut rng)?;
                    let co = coaction_from_action(&a)?;
                    let (cd, ad) = round_trip_defects(&co)?;
                    cert.check("random_inner.coaction_round_trip", cd, tol);
                    cert.check("random_inner.action_round_trip", ad, tol);
                }
                cert.info("random_inner_actions", RANDOM_INNER_ACTIONS);
            }
        }
    }
    Ok(cert)
}

fn reconstruct_suite(r: &Run<'_>, c: &Coaction) -> Result<Certificate> {
    let tol = r.cfg.tol;
    let mut cert = r.cert();
    let owned;
    let action: &DualAction = match &r.target.data {
        TargetData::Action(a) => a,
        _ => {
            owned = action_from_coaction(c)?;
            &owned
        }
    };
    let (b, inner) = reconstruct_bundle(action, tol)?;
    cert.absorb("", &inner);
    cert.info("fiber_dims", b.fiber_dims());
    if let TargetData::Bundle(bt) = &r.target.data {
        cert.require("fiber_dimensions_match", b.fiber_dims() == bt.bundle.fiber_dims());
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// The whole corpus

/// One (suite, target) pair of [`run_all`].
#[derive(Debug, Clone)]
pub struct Entry {
    pub suite: Suite,
    pub target: String,
    pub outcome: Outcome,
    pub wall_time_ms: f64,
}

/// The bundle fixtures followed by `gauge-m2`.
pub fn corpus() -> Vec<String> {
    let mut names: Vec<String> = fixtures::all_fixtures().iter().map(ToString::to_string).collect();
    names.push(fixtures::GAUGE_M2.to_string());
    names
}

/// Every suite on every corpus target. Group-level suites run once per
/// group, on its group-kind fixture.
pub fn run_all(cfg: &Config) -> Result<Vec<Entry>> {
    use rayon::prelude::*;
    let names = corpus();
    let per_target: Vec<Result<Vec<Entry>>> = names
        .par_iter()
        .map(|name| {
            let target = Target::named(name)?;
            let group_kind = match &target.data {
                TargetData::Bundle(bt) => bt.fixture.is_some_and(|id| id.kind == Kind::Group),
                _ => false,
            };
            let mut out = Vec::with_capacity(Suite::ALL.len());
            for suite in Suite::ALL {
                let start = std::time::Instant::now();
                let outcome = if suite.is_group_level() && !group_kind {
                    Outcome::Skipped(format!(
                        "group-level suite; runs on the {}-group fixture",
                        target.group().name().to_ascii_lowercase()
                    ))
                } else {
                    run(suite, &target, cfg)?
                };
                out.push(Entry {
                    suite,
                    target: name.clone(),
                    outcome,
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
            Ok(out)
        })
        .collect();
    let mut entries = Vec::new();
    for r in per_target {
        entries.extend(r?);
    }
    Ok(entries)
}
