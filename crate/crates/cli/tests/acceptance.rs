//! End-to-end acceptance criteria. Prints one line per criterion and exits
//! non-zero if any fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use fellcoact::balgebra::{build_algebra, BundleAlgebra, RegularModel, Section};
use fellcoact::bundle::FellBundle;
use fellcoact::certificate::Certificate;
use fellcoact::coaction::{dual_coaction, Coaction};
use fellcoact::fixtures::{all_fixtures, build, fixture_group, nilpotent_fiber_bundle, FixtureId, Kind, GROUPS};
use fellcoact::groups::FiniteGroup;
use fellcoact::harmonic::{OperatorFunction, PlancherelWeight};
use fellcoact::io::bundle_to_json;
use fellcoact::linalg::{op_norm, rank_of_columns, rel_diff, C64, ONE, ZERO};
use fellcoact::sampling::Sampler;
use fellcoact::suites::{run, Config, Outcome, Suite, Target};

const TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-8;
const PLANCHEREL_TOL: f64 = 1e-12;
const SQRT_TOL: f64 = 1e-8;
const SECTIONS: usize = 50;

type Verdict = Result<String, String>;

struct Built {
    id: FixtureId,
    bundle: Arc<FellBundle>,
    ba: BundleAlgebra,
    c: Coaction,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sections(b: &Built, purpose: &str) -> Vec<Section> {
    let mut rng = Sampler::derived(0, &format!("acceptance/{}/{purpose}", b.id));
    (0..SECTIONS).map(|_| b.ba.random_section(&mut rng)).collect()
}

fn build_corpus() -> Result<Vec<Built>, String> {
    all_fixtures()
        .into_iter()
        .map(|id| {
            let bundle = Arc::new(build(id).map_err(err)?);
            let ba = build_algebra(bundle.clone()).map_err(err)?;
            let c = dual_coaction(&ba).map_err(err)?;
            Ok(Built { id, bundle, ba, c })
        })
        .collect()
}

/// Runs a suite and requires a passing certificate whose every residual is
/// within `pinned`.
fn suite_within(suite: Suite, target: &Target, pinned: f64) -> Result<Certificate, String> {
    match run(suite, target, &Config::default()).map_err(err)? {
        Outcome::Skipped(why) => Err(format!("{} on {} skipped: {why}", suite.name(), target.name)),
        Outcome::Ran(cert) => {
            if !cert.passed() {
                return Err(format!("{} on {}: {:?}", suite.name(), target.name, cert.failures()));
            }
            if let Some((l, r)) = cert.residuals.iter().find(|(_, &r)| r > pinned) {
                return Err(format!("{} on {}: {l} = {r:e} > {pinned:e}", suite.name(), target.name));
            }
            Ok(cert)
        }
    }
}

fn criterion_1(corpus: &[Built], build_secs: f64) -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for b in corpus {
        let e = b.bundle.group().identity();
        for xi in sections(b, "average") {
            let av = b.c.average(&b.ba.embed(&xi)).map_err(err)?;
            worst = worst.max(av.dist(&b.ba.generator_map(e, xi.value(e))));
        }
    }
    let secs = build_secs + start.elapsed().as_secs_f64();
    if worst > TOL {
        return Err(format!("max residual {worst:e}"));
    }
    if secs >= 5.0 {
        return Err(format!("took {secs:.2} s"));
    }
    Ok(format!("{} fixtures x {SECTIONS} sections, max residual {worst:.2e}, {secs:.2} s", corpus.len()))
}

fn criterion_2(corpus: &[Built]) -> Verdict {
    let mut worst = 0.0f64;
    for b in corpus {
        for xi in sections(b, "coefficients") {
            let rx = b.ba.embed(&xi);
            for t in b.bundle.group().elements() {
                let et = b.c.fourier_coeff(&rx, t).map_err(err)?;
                worst = worst.max(et.dist(&b.ba.generator_map(t, xi.value(t))));
            }
        }
    }
    if worst > TOL {
        return Err(format!("max residual {worst:e}"));
    }
    Ok(format!("max per-t residual {worst:.2e}"))
}

fn coaction_targets() -> Result<Vec<Target>, String> {
    let mut out: Vec<Target> = all_fixtures().into_iter().map(Target::fixture).collect::<fellcoact::Result<_>>().map_err(err)?;
    out.push(Target::gauge_m2().map_err(err)?);
    Ok(out)
}

fn criterion_3(targets: &[Target]) -> Verdict {
    let mut worst = 0.0f64;
    let mut omegas = 0usize;
    for t in targets {
        let cert = suite_within(Suite::Inversion, t, TOL)?;
        if !cert.residuals.keys().any(|l| l.starts_with("basis.")) {
            return Err(format!("{}: no basis residuals", t.name));
        }
        omegas += cert.residuals.keys().filter(|l| l.starts_with("sampled.")).count().min(1);
        worst = worst.max(cert.max_residual());
    }
    if omegas != targets.len() {
        return Err("some targets have no sampled Fourier-Stieltjes checks".into());
    }
    Ok(format!("{} coactions, max residual {worst:.2e}", targets.len()))
}

fn criterion_4(targets: &[Target]) -> Verdict {
    let mut worst = 0.0f64;
    for t in targets {
        let cert = suite_within(Suite::CoefficientIdentities, t, TOL)?;
        if cert.informational.get("tuples").and_then(|v| v.as_u64()) != Some(100) {
            return Err(format!("{}: expected 100 tuples", t.name));
        }
        worst = worst.max(cert.max_residual());
    }
    Ok(format!("{} coactions x 100 tuples, max residual {worst:.2e}", targets.len()))
}

fn criterion_5() -> Verdict {
    let mut root = 0.0f64;
    for g in GROUPS {
        let target = Target::fixture(FixtureId { group: g, kind: Kind::Group }).map_err(err)?;
        let cert = suite_within(Suite::PositiveDefinite, &target, SQRT_TOL)?;
        if cert.residual("disagreements") != Some(0.0) {
            return Err(format!("{g}: disagreements"));
        }
        root = root.max(cert.residual("square_root").unwrap_or(f64::MAX));
        root = root.max(cert.residual("square_root_convolution").unwrap_or(f64::MAX));
    }
    Ok(format!("{} groups x 200 functions, 0 disagreements, square-root residual {root:.2e}", GROUPS.len()))
}

/// `dim M_t` as the nullity of `a ↦ δ(a) − a ⊗ λ_t`.
fn spectral_dim(c: &Coaction, t: usize) -> Result<usize, String> {
    let n = c.dim();
    let cols: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut unit = vec![ZERO; n];
            unit[i] = ONE;
            let mut d = c.delta_of_coords(&unit);
            let a = c.algebra().element(&unit);
            d.axpy(-ONE, &OperatorFunction::delta(c.group().clone(), t, a));
            d.values().iter().flat_map(|m| m.as_slice().to_vec()).collect()
        })
        .collect();
    if cols.is_empty() {
        return Ok(0);
    }
    Ok(n - rank_of_columns(&cols).map_err(err)?)
}

fn criterion_6(corpus: &[Built]) -> Verdict {
    for b in corpus {
        let g = b.bundle.group();
        let dims: Vec<usize> = g.elements().map(|t| spectral_dim(&b.c, t)).collect::<Result<_, _>>()?;
        if dims != b.bundle.fiber_dims() {
            return Err(format!("{}: spectral dims {dims:?} vs fibers {:?}", b.id, b.bundle.fiber_dims()));
        }
        if dims.iter().sum::<usize>() != b.c.dim() {
            return Err(format!("{}: spectral dims do not sum to dim A", b.id));
        }
        let spaces = g.elements().map(|t| b.c.spectral_subspace(t)).collect::<fellcoact::Result<Vec<_>>>().map_err(err)?;
        for s in g.elements() {
            for t in (s + 1)..g.order() {
                let cols: Vec<Vec<C64>> = spaces[s]
                    .basis()
                    .chain(spaces[t].basis())
                    .map(|m| m.as_slice().to_vec())
                    .collect();
                if !cols.is_empty() && rank_of_columns(&cols).map_err(err)? != dims[s] + dims[t] {
                    return Err(format!("{}: M_{s} and M_{t} intersect", b.id));
                }
            }
        }
    }
    Ok(format!("{} dual coactions: dims match fibers, sum to dim A, pairwise independent", corpus.len()))
}

fn abelian_targets(targets: &[Target]) -> impl Iterator<Item = &Target> {
    targets.iter().filter(|t| t.group().is_abelian())
}

fn criterion_7(targets: &[Target]) -> Verdict {
    let mut worst = 0.0f64;
    let mut count = 0;
    for t in abelian_targets(targets) {
        let cert = suite_within(Suite::AbelianDictionary, t, TOL)?;
        for label in ["coaction_round_trip", "action_round_trip", "spectral_elements_vs_coefficients"] {
            if cert.residual(label).is_none() {
                return Err(format!("{}: missing {label}", t.name));
            }
        }
        if matches!(t.data, fellcoact::suites::TargetData::Bundle(_))
            && cert.residual("dual_action.dual_action_law").is_none()
        {
            return Err(format!("{}: missing dual-action law", t.name));
        }
        worst = worst.max(cert.max_residual());
        count += 1;
    }
    Ok(format!("{count} abelian targets, max residual {worst:.2e}"))
}

fn criterion_8(targets: &[Target]) -> Verdict {
    let mut count = 0;
    for t in abelian_targets(targets) {
        let cert = suite_within(Suite::Reconstruct, t, TOL)?;
        for label in ["theta_bijective", "theta_multiplicative", "theta_adjoint"] {
            if cert.residual(label).is_none() {
                return Err(format!("{}: missing {label}", t.name));
            }
        }
        if !cert.residuals.keys().any(|l| l.starts_with("axioms.")) {
            return Err(format!("{}: axioms not checked", t.name));
        }
        count += 1;
    }
    Ok(format!("{count} actions reconstructed, Θ a *-isomorphism in each"))
}

fn criterion_9() -> Verdict {
    let mut parts = Vec::new();
    for (kind, dim) in [(Kind::Semidirect, 4), (Kind::Partial, 1)] {
        let target = Target::fixture(FixtureId { group: "c2", kind }).map_err(err)?;
        let cert = suite_within(Suite::CrossedProduct, &target, TOL)?;
        let info = |k: &str| cert.informational.get(k).cloned().unwrap_or_default();
        if info("direct_dim").as_u64() != Some(dim) || info("bundle_algebra_dim").as_u64() != Some(dim) {
            return Err(format!("c2-{}: dims {} / {}", kind.as_str(), info("direct_dim"), info("bundle_algebra_dim")));
        }
        if kind == Kind::Semidirect && info("direct_signature") != "M_2" {
            return Err(format!("c2-semidirect: signature {}", info("direct_signature")));
        }
        parts.push(format!("c2-{} dim {dim} sig {}", kind.as_str(), info("direct_signature")));
    }
    Ok(parts.join(", "))
}

fn convolve(g: &FiniteGroup, f: &[C64], h: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; g.order()];
    for s in g.elements() {
        for r in g.elements() {
            out[g.mul(s, r)] += f[s] * h[r];
        }
    }
    out
}

fn criterion_10() -> Verdict {
    let mut worst = 0.0f64;
    for name in GROUPS {
        let g = fixture_group(name).map_err(err)?;
        let k = g.order();
        let phi = PlancherelWeight::new(g.clone());
        for t in g.elements() {
            let want = if t == g.identity() { ONE } else { ZERO };
            if phi.eval(&g.lambda(t)).map_err(err)? != want {
                return Err(format!("{name}: φ(λ_{t}) is not exact"));
            }
        }
        let mut rng = Sampler::derived(0, &format!("acceptance/{name}/plancherel"));
        for _ in 0..SECTIONS {
            let f = rng.vector(k);
            let h = rng.vector(k);
            let (x, y) = (g.lambda_of(&f), g.lambda_of(&h));
            let scale = 1.0 + f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() * h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let val = phi.eval(&x).map_err(err)?;
            worst = worst.max((val - x.trace() / k as f64).norm() / scale);
            let xy = phi.eval(&x.matmul(&y)).map_err(err)?;
            let yx = phi.eval(&y.matmul(&x)).map_err(err)?;
            worst = worst.max((xy - yx).norm() / scale);
            // (f* ∗ h)(t) = ⟨f | h(· t)⟩
            let fstar: Vec<C64> = g.elements().map(|s| f[g.inv(s)].conj()).collect();
            let conv = convolve(&g, &fstar, &h);
            for t in g.elements() {
                let ip: C64 = g.elements().map(|s| f[s].conj() * h[g.mul(s, t)]).sum();
                worst = worst.max((conv[t] - ip).norm() / scale);
            }
        }
    }
    if worst > PLANCHEREL_TOL {
        return Err(format!("max residual {worst:e}"));
    }
    Ok(format!("exact on translations, max residual {worst:.2e}"))
}

fn criterion_11(corpus: &[Built]) -> Verdict {
    let mut worst = 0.0f64;
    for b in corpus {
        let model = RegularModel::new(b.bundle.clone()).map_err(err)?;
        for xi in sections(b, "norms") {
            let rho = op_norm(&b.ba.embed(&xi)).map_err(err)?;
            let reg = op_norm(&model.operator(&xi).map_err(err)?).map_err(err)?;
            worst = worst.max(rel_diff(rho, reg));
        }
    }
    if worst > NORM_TOL {
        return Err(format!("max relative difference {worst:e}"));
    }
    Ok(format!("{} fixtures x {SECTIONS} sections, max relative difference {worst:.2e}", corpus.len()))
}

fn criterion_12() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_fellcoact");
    let dir = tempfile::tempdir().map_err(err)?;
    let start = Instant::now();
    let all = Command::new(bin).arg("all").arg("--report").arg(dir.path().join("report")).output().map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    if all.status.code() != Some(0) {
        return Err(format!("all exited {:?}: {}", all.status.code(), String::from_utf8_lossy(&all.stderr)));
    }
    if secs >= 60.0 {
        return Err(format!("all took {secs:.1} s"));
    }
    if !dir.path().join("report/index.json").exists() {
        return Err("no index.json written".into());
    }
    let bad = dir.path().join("nilpotent-fiber.json");
    let doc = bundle_to_json(&nilpotent_fiber_bundle().map_err(err)?);
    std::fs::write(&bad, serde_json::to_string_pretty(&doc).map_err(err)?).map_err(err)?;
    let check = Command::new(bin).arg("check-bundle").arg(&bad).output().map_err(err)?;
    let text = format!("{}{}", String::from_utf8_lossy(&check.stdout), String::from_utf8_lossy(&check.stderr));
    if check.status.code() != Some(1) {
        return Err(format!("check-bundle exited {:?}", check.status.code()));
    }
    if !text.contains("involution") {
        return Err("check-bundle did not name the involution axiom".into());
    }
    Ok(format!("all exited 0 in {secs:.1} s; check-bundle on the nilpotent fiber exited 1 naming involution"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = build_corpus();
    let build_secs = start.elapsed().as_secs_f64();
    let targets = coaction_targets();
    let mut results: Vec<Verdict> = Vec::new();
    match (&corpus, &targets) {
        (Ok(corpus), Ok(targets)) => {
            results.push(criterion_1(corpus, build_secs));
            results.push(criterion_2(corpus));
            results.push(criterion_3(targets));
            results.push(criterion_4(targets));
            results.push(criterion_5());
            results.push(criterion_6(corpus));
            results.push(criterion_7(targets));
            results.push(criterion_8(targets));
            results.push(criterion_9());
            results.push(criterion_10());
            results.push(criterion_11(corpus));
            results.push(criterion_12());
        }
        (Err(e), _) | (_, Err(e)) => results = vec![Err(format!("corpus failed to build: {e}")); 12],
    }
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {:>2}: PASS  {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
