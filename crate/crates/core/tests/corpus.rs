//! The JSON corpus under `fixtures/` matches the builtin fixtures.

use std::path::PathBuf;

use fellcoact::fixtures::{all_fixtures, build};
use fellcoact::io::{document_kind, parse_action, parse_bundle, parse_coaction, parse_text, DocumentKind};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> serde_json::Value {
    let path = corpus_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_text(&text).unwrap()
}

#[test]
fn shipped_bundles_match_the_builtins() {
    for id in all_fixtures() {
        let v = read(&format!("{id}.json"));
        assert_eq!(document_kind(&v).unwrap(), DocumentKind::Bundle);
        let b = parse_bundle(&v).unwrap();
        let want = build(id).unwrap();
        assert_eq!(b.fiber_dims(), want.fiber_dims(), "{id}");
        for t in want.group().elements() {
            assert!(b.fiber(t).equality_defect(want.fiber(t)).unwrap() < 1e-12, "{id} fiber {t}");
        }
    }
}

#[test]
fn shipped_counterexamples_fail_their_checks() {
    let nil = parse_bundle(&read("counterexamples/nilpotent-fiber.json")).unwrap();
    let cert = nil.check_axioms(1e-9);
    assert!(cert.failures().iter().any(|f| f.contains("involution")));

    let twisted = parse_coaction(&read("counterexamples/twisted-translation.json")).unwrap();
    let cert = fellcoact::coaction::check_coaction(&twisted, 1e-9);
    assert!(!cert.passed());
}

#[test]
fn shipped_gauge_action_parses() {
    let a = parse_action(&read("gauge-m2.json")).unwrap();
    assert_eq!(a.algebra().dim(), 4);
}
