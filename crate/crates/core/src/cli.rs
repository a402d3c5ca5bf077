//! Command implementations behind the `fellcoact` binary. Each returns the
//! process exit code: 0 pass, 1 verification failure, 2 input or schema error.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use crate::balgebra::{FiberRepresentation, RegularModel, Section};
use crate::bundle::{group_bundle, FellBundle};
use crate::certificate::{sha256_hex, Certificate};
use crate::error::{Error, Result};
use crate::fixtures::{self, FixtureId, Kind};
use crate::groups::builtin;
use crate::io::{self, DocumentKind};
use crate::linalg::{op_norm, CMatrix};
use crate::suites::{self, Config, Outcome, Suite, Target};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Options {
    pub config: Config,
    /// Print certificates as JSON instead of a summary.
    pub json: bool,
}

fn read_document(path: &Path) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    io::parse_text(&text)
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// A fixture name, `gauge-m2`, a builtin group name (its group bundle), or a
/// JSON file holding a bundle, coaction or action.
pub fn resolve_target(arg: &str) -> Result<Target> {
    if arg == fixtures::GAUGE_M2 || arg.parse::<FixtureId>().is_ok() {
        return Target::named(arg);
    }
    let path = Path::new(arg);
    if !path.exists() {
        if let Ok(g) = builtin(arg) {
            return Target::from_bundle(format!("{}-group", arg.to_ascii_lowercase()), group_bundle(Arc::new(g)), None);
        }
        return Err(Error::InvalidInput(format!(
            "'{arg}' is neither a fixture, a builtin group nor an existing file"
        )));
    }
    let v = read_document(path)?;
    let name = file_stem(path);
    match io::document_kind(&v)? {
        DocumentKind::Bundle => Target::from_bundle(name, io::parse_bundle(&v)?, None),
        DocumentKind::Coaction => Ok(Target::from_coaction(name, io::parse_coaction(&v)?)),
        DocumentKind::Action => Ok(Target::from_action(name, io::parse_action(&v)?)),
        other => Err(Error::schema("$", format!("a {other:?} document is not a verification target"))),
    }
}

fn resolve_bundle(arg: &str) -> Result<(String, FellBundle)> {
    if let Ok(id) = arg.parse::<FixtureId>() {
        return Ok((id.to_string(), fixtures::build(id)?));
    }
    let path = Path::new(arg);
    if !path.exists() {
        if let Ok(g) = builtin(arg) {
            return Ok((format!("{}-group", arg.to_ascii_lowercase()), group_bundle(Arc::new(g))));
        }
        return Err(Error::InvalidInput(format!(
            "'{arg}' is neither a fixture, a builtin group nor an existing file"
        )));
    }
    let v = read_document(path)?;
    if io::document_kind(&v)? != DocumentKind::Bundle {
        return Err(Error::schema("$", "expected a bundle document with a 'fibers' field"));
    }
    Ok((file_stem(path), io::parse_bundle(&v)?))
}

/// Human-readable certificate summary.
pub fn render(cert: &Certificate) -> String {
    let mut s = format!(
        "{} on {}: {}\n",
        cert.suite,
        cert.target,
        if cert.passed() { "PASS" } else { "FAIL" }
    );
    let width = cert.residuals.keys().map(String::len).max().unwrap_or(0);
    for (label, r) in &cert.residuals {
        let tol = cert.tolerances.get(label).copied().unwrap_or(0.0);
        let mark = if *r <= tol { "ok" } else { "FAILED" };
        s.push_str(&format!("  {label:<width$}  {r:.3e}  (tol {tol:.0e})  {mark}\n"));
    }
    for (label, v) in &cert.informational {
        s.push_str(&format!("  {label:<width$}  = {v}\n"));
    }
    for n in &cert.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn emit(out: &mut dyn Write, cert: &Certificate, json: bool) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", cert.to_json_pretty())
    } else {
        write!(out, "{}", render(cert))
    }
}

fn input_error(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

fn verdict_code(cert: &Certificate) -> i32 {
    if cert.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn cmd_check_bundle(arg: &str, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (name, bundle) = match resolve_bundle(arg) {
        Ok(x) => x,
        Err(e) => return input_error(err, &e),
    };
    let mut cert = bundle.check_axioms(opts.config.tol).with_target(name);
    cert.input_digest = sha256_hex(io::bundle_to_json(&bundle).to_string().as_bytes());
    cert.info("fiber_dims", bundle.fiber_dims());
    if emit(out, &cert, opts.json).is_err() {
        return EXIT_INPUT;
    }
    if !cert.passed() && !opts.json {
        let _ = writeln!(err, "bundle axioms violated: {}", cert.failures().join(", "));
    }
    verdict_code(&cert)
}

pub fn cmd_verify(suite: &str, target: &str, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return input_error(err, &e),
    };
    let target = match resolve_target(target) {
        Ok(t) => t,
        Err(e) => return input_error(err, &e),
    };
    let start = Instant::now();
    match suites::run(suite, &target, &opts.config) {
        Ok(Outcome::Ran(cert)) => {
            if emit(out, &cert, opts.json).is_err() {
                return EXIT_INPUT;
            }
            if !opts.json {
                let _ = writeln!(out, "  wall time {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
            }
            verdict_code(&cert)
        }
        Ok(Outcome::Skipped(reason)) => {
            let _ = writeln!(err, "suite {suite} does not apply to {}: {reason}", target.name);
            EXIT_INPUT
        }
        Err(e) => input_error(err, &e),
    }
}

/// Run every suite on the corpus; with a report directory, write
/// `<dir>/<suite>/<target>.json` and `<dir>/index.json`.
pub fn cmd_all(report: Option<&Path>, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let entries = match suites::run_all(&opts.config) {
        Ok(e) => e,
        Err(e) => return input_error(err, &e),
    };
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut failed = 0usize;
    let mut ran = 0usize;
    let mut index = Vec::new();
    let mut skipped = Vec::new();
    for e in &entries {
        match &e.outcome {
            Outcome::Ran(cert) => {
                ran += 1;
                let file = format!("{}/{}.json", e.suite, e.target);
                if !cert.passed() {
                    failed += 1;
                }
                if let Some(dir) = report {
                    let path = dir.join(&file);
                    let written = path
                        .parent()
                        .map_or(Ok(()), fs::create_dir_all)
                        .and_then(|_| fs::write(&path, cert.to_json_pretty() + "\n"));
                    if let Err(x) = written {
                        let _ = writeln!(err, "error: cannot write {}: {x}", path.display());
                        return EXIT_INPUT;
                    }
                }
                index.push(json!({
                    "suite": e.suite.name(),
                    "target": e.target,
                    "verdict": if cert.passed() { "pass" } else { "fail" },
                    "max_residual": cert.max_residual(),
                    "certificate": file,
                    "wall_time_ms": e.wall_time_ms,
                }));
                if !opts.json {
                    let _ = writeln!(
                        out,
                        "{:<4} {:<24} {:<18} max residual {:.2e}  {:>8.1} ms",
                        if cert.passed() { "ok" } else { "FAIL" },
                        e.suite.name(),
                        e.target,
                        cert.max_residual(),
                        e.wall_time_ms
                    );
                    if !cert.passed() {
                        let _ = writeln!(out, "     failed: {}", cert.failures().join(", "));
                    }
                }
            }
            Outcome::Skipped(reason) => {
                skipped.push(json!({"suite": e.suite.name(), "target": e.target, "reason": reason}));
            }
        }
    }
    let summary = json!({
        "schema_version": crate::certificate::SCHEMA_VERSION,
        "seed": opts.config.seed,
        "samples": opts.config.samples,
        "tol": opts.config.tol,
        "ran": ran,
        "failed": failed,
        "entries": index,
        "skipped": skipped,
        "total_wall_time_ms": total_ms,
    });
    if let Some(dir) = report {
        let path = dir.join("index.json");
        let written = fs::create_dir_all(dir)
            .and_then(|_| fs::write(&path, serde_json::to_string_pretty(&summary).expect("index serializes") + "\n"));
        if let Err(x) = written {
            let _ = writeln!(err, "error: cannot write {}: {x}", path.display());
            return EXIT_INPUT;
        }
    }
    if opts.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("index serializes"));
    } else {
        let _ = writeln!(
            out,
            "{ran} certificates, {failed} failed, {} skipped, {:.1} s",
            skipped.len(),
            total_ms / 1e3
        );
    }
    if failed == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

const PRINT_LIMIT: usize = 32;

fn show(out: &mut dyn Write, label: &str, m: &CMatrix) -> std::io::Result<()> {
    if m.rows() <= PRINT_LIMIT && m.cols() <= PRINT_LIMIT {
        writeln!(out, "{label} =")?;
        write!(out, "{m}")
    } else {
        let nnz = m.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        writeln!(
            out,
            "{label} = <{}x{} matrix, {nnz} nonzero entries, Frobenius norm {:.6}>",
            m.rows(),
            m.cols(),
            m.frobenius()
        )
    }
}

/// The section shown by `demo`: `ξ(e) = 2I, ξ(t) = λ_t` on group bundles,
/// `ξ(t) = (t+1)·Σ(fiber basis)` otherwise.
fn demo_section(id: FixtureId, bundle: &Arc<FellBundle>) -> Result<Section> {
    let g = bundle.group();
    let n = bundle.ambient_dim();
    let values = g
        .elements()
        .map(|t| match id.kind {
            Kind::Group if t == g.identity() => CMatrix::identity(n).scale_real(2.0),
            Kind::Group => g.lambda(t),
            _ => {
                let mut v = CMatrix::zeros(n, n);
                for b in bundle.fiber(t).basis() {
                    v += b;
                }
                v.scale_real((t + 1) as f64)
            }
        })
        .collect();
    Section::new(bundle.clone(), values)
}

fn demo_body(id: FixtureId, out: &mut dyn Write) -> Result<()> {
    let io_err = |e: std::io::Error| Error::InvalidInput(format!("cannot write output: {e}"));
    let target = Target::fixture(id)?;
    let suites::TargetData::Bundle(bt) = &target.data else {
        unreachable!("fixtures are bundles");
    };
    let bundle = &bt.bundle;
    let g = bundle.group();
    let (ba, c) = bt
        .built
        .as_ref()
        .ok_or_else(|| Error::AxiomFailure(bt.axioms.failures().join(", ")))?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    w(out, format!("fixture {id}: group {} of order {}", g.name(), g.order()))?;
    w(out, "Cayley table (row s, column t: st)".into())?;
    for row in g.cayley() {
        w(out, format!("  {row:?}"))?;
    }
    for t in g.elements() {
        show(out, &format!("lambda_{t}"), &g.lambda(t)).map_err(io_err)?;
    }
    w(out, format!("fibers in M_{} with dimensions {:?}", bundle.ambient_dim(), bundle.fiber_dims()))?;
    for t in g.elements() {
        for (k, b) in bundle.fiber(t).basis().enumerate() {
            show(out, &format!("B_{t} basis[{k}]"), b).map_err(io_err)?;
        }
    }
    let xi = demo_section(id, bundle)?;
    for t in g.elements() {
        show(out, &format!("xi({t})"), xi.value(t)).map_err(io_err)?;
    }
    let rx = ba.embed(&xi);
    show(out, "rho(xi) = sum_t xi(t) (x) lambda_t", &rx).map_err(io_err)?;
    let dx = c.delta(&rx)?;
    for t in g.elements() {
        let et = c.coeff_of_image(&dx, t);
        let expected = ba.generator_map(t, xi.value(t));
        show(out, &format!("E_{t}(rho(xi))"), &et).map_err(io_err)?;
        w(out, format!("  |E_{t}(rho(xi)) - xi({t}) (x) lambda_{t}|_F = {:.3e}", et.dist(&expected)))?;
    }
    let av = c.average(&rx)?;
    show(out, "Av(rho(xi)) = E_e(rho(xi))", &av).map_err(io_err)?;
    let mut sum = CMatrix::zeros(rx.rows(), rx.cols());
    for t in g.elements() {
        sum += &c.coeff_of_image(&dx, t);
    }
    w(out, format!("|rho(xi) - sum_t E_t(rho(xi))|_F = {:.3e}", rx.dist(&sum)))?;
    let model = RegularModel::new(bundle.clone())?;
    let n_rho = op_norm(&rx)?;
    let n_reg = op_norm(&model.operator(&xi)?)?;
    w(out, format!("|rho(xi)| = {n_rho:.12}   |lambda_B(xi)| = {n_reg:.12}"))?;
    let incl = FiberRepresentation::inclusion(bundle.clone())?;
    if !incl.warnings().is_empty() {
        w(out, format!("note: {}", incl.warnings().join("; ")))?;
    }
    let spectral: Vec<usize> = c.spectral_coords().iter().map(Vec::len).collect();
    w(out, format!("spectral subspace dimensions {spectral:?}, algebra dimension {}", c.dim()))?;
    Ok(())
}

pub fn cmd_demo(fixture: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let id: FixtureId = match fixture.parse() {
        Ok(id) => id,
        Err(e) => return input_error(err, &e),
    };
    match demo_body(id, out) {
        Ok(()) => EXIT_PASS,
        Err(e) => input_error(err, &e),
    }
}

/// Write the corpus as JSON documents into `dir`.
pub fn export_corpus(dir: &Path) -> Result<Vec<String>> {
    let io_err = |e: std::io::Error| Error::InvalidInput(format!("cannot write corpus: {e}"));
    fs::create_dir_all(dir.join("counterexamples")).map_err(io_err)?;
    let mut written = Vec::new();
    let mut put = |rel: String, v: serde_json::Value| -> Result<()> {
        fs::write(dir.join(&rel), serde_json::to_string_pretty(&v).expect("JSON serializes") + "\n").map_err(io_err)?;
        written.push(rel);
        Ok(())
    };
    for id in fixtures::all_fixtures() {
        put(format!("{id}.json"), io::bundle_to_json(&fixtures::build(id)?))?;
    }
    put(format!("{}.json", fixtures::GAUGE_M2), io::action_to_json(&fixtures::gauge_m2()?))?;
    put(
        "counterexamples/nilpotent-fiber.json".into(),
        io::bundle_to_json(&fixtures::nilpotent_fiber_bundle()?),
    )?;
    put(
        "counterexamples/twisted-translation.json".into(),
        io::coaction_to_json(&fixtures::twisted_translation()?),
    )?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: impl FnOnce(&mut Vec<u8>, &mut Vec<u8>) -> i32) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = f(&mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_bundle_exit_codes() {
        let opts = Options::default();
        let (code, _, _) = run(|o, e| cmd_check_bundle("c2-semidirect", &opts, o, e));
        assert_eq!(code, EXIT_PASS);
        let (code, _, _) = run(|o, e| cmd_check_bundle("no-such-thing", &opts, o, e));
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn nilpotent_counterexample_names_involution() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nil.json");
        let v = io::bundle_to_json(&fixtures::nilpotent_fiber_bundle().unwrap());
        fs::write(&path, v.to_string()).unwrap();
        let opts = Options::default();
        let (code, out, _) = run(|o, e| cmd_check_bundle(path.to_str().unwrap(), &opts, o, e));
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("involution") && out.contains("FAILED"));
    }

    #[test]
    fn schema_errors_exit_two_with_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, r#"{"group": "c2", "ambient_dim": 1, "fibers": {"0": [[["x", 0]]]}}"#).unwrap();
        let opts = Options::default();
        let (code, _, err) = run(|o, e| cmd_verify("dual-coaction", path.to_str().unwrap(), &opts, o, e));
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("$.fibers.0[0][0][0]"), "{err}");
    }

    #[test]
    fn demo_prints_the_c2_example() {
        let (code, out, _) = run(|o, e| cmd_demo("c2-group", o, e));
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("lambda_1 =") && out.contains("E_1(rho(xi))"));
    }
}
