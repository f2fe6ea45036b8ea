//! End-to-end checks of the `strata` binary: exit codes, determinism, and
//! the shape of the emitted reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::{json, Value};

use strata_core::complex::PosetComplex;
use strata_core::encoding::Encoding;
use strata_core::field::Field;
use strata_core::geometry::{Arrangement, Cone, FaceSet};
use strata_core::matrix::Matrix;
use strata_core::module::PosetModule;
use strata_core::poset::FinitePoset;
use strata_core::sample;
use strata_core::scalar::rat;

fn fixture_dir() -> PathBuf {
    match std::env::var("STRATA_FIXTURES") {
        Ok(p) => PathBuf::from(p),
        Err(_) => Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"),
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    fixture_dir().join(name).to_string_lossy().into_owned()
}

fn bundle_json(enc: &Encoding, complex: &PosetComplex) -> Value {
    let ej = enc.to_json();
    json!({
        "cone": ej.cone,
        "hyperplanes": ej.arrangement.hyperplanes,
        "poset": ej.poset,
        "assign": ej.assign,
        "complex": complex.to_json(),
        "options": {"field": "q"}
    })
}

/// Regenerates the fixture bundles from the sample constructions.
/// Run explicitly after changing the generators:
/// `cargo test -p strata-cli --test cli regenerate_fixtures -- --ignored`.
#[test]
#[ignore]
fn regenerate_fixtures() {
    let dir = fixture_dir();
    std::fs::create_dir_all(&dir).unwrap();

    // Interval bundle: k[[0,1)] on the line.
    let (enc, m) = sample::interval_example();
    let complex = PosetComplex::concentrated(m, 0);
    std::fs::write(
        dir.join("interval.json"),
        serde_json::to_string_pretty(&bundle_json(&enc, &complex)).unwrap(),
    )
    .unwrap();

    // Square bundle: k[[0,1]²] over the box walls.
    let plc = sample::square_example();
    std::fs::write(
        dir.join("square.json"),
        serde_json::to_string_pretty(&bundle_json(plc.encoding(), plc.complex())).unwrap(),
    )
    .unwrap();

    // Non-compact bundle: k[[0,∞)²] over the axes.
    let arr = Arc::new(
        Arrangement::build(
            2,
            &[(vec![rat(1), rat(0)], rat(0)), (vec![rat(0), rat(1)], rat(0))],
        )
        .unwrap(),
    );
    let cone = Arc::new(Cone::orthant(2));
    let quadrant = FaceSet::from_predicate(arr.clone(), |p| p[0] >= rat(0) && p[1] >= rat(0));
    let poset = Arc::new(FinitePoset::chain(2));
    let assign: Vec<usize> = (0..arr.num_faces())
        .map(|f| usize::from(quadrant.contains(f)))
        .collect();
    let enc = Encoding::new(arr, cone, poset.clone(), assign).unwrap();
    let m = Arc::new(
        PosetModule::new(
            poset,
            Field::Rational,
            vec![0, 1],
            vec![Matrix::zeros(1, 0)],
        )
        .unwrap(),
    );
    let complex = PosetComplex::concentrated(m, 0);
    std::fs::write(
        dir.join("noncompact.json"),
        serde_json::to_string_pretty(&bundle_json(&enc, &complex)).unwrap(),
    )
    .unwrap();

    // A bundle whose assignment is not order-preserving.
    let arr = Arc::new(
        Arrangement::build(
            2,
            &[(vec![rat(1), rat(0)], rat(0)), (vec![rat(0), rat(1)], rat(0))],
        )
        .unwrap(),
    );
    let cone = Arc::new(Cone::orthant(2));
    let poset = Arc::new(FinitePoset::new_named(vec!["p".into(), "q".into()], &[]).unwrap());
    let origin = arr.face_of(&[rat(0), rat(0)]);
    let mut assign = vec![0usize; arr.num_faces()];
    assign[origin] = 1;
    let enc = Encoding::new(arr, cone, poset.clone(), assign).unwrap();
    let zero = Arc::new(PosetModule::zero(poset, Field::Rational));
    let complex = PosetComplex::concentrated(zero, 0);
    std::fs::write(
        dir.join("bad_assign.json"),
        serde_json::to_string_pretty(&bundle_json(&enc, &complex)).unwrap(),
    )
    .unwrap();
}

#[test]
fn validate_passes_on_interval_bundle() {
    let out = run(&["validate", &fixture("interval.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], json!(true));
}

#[test]
fn validate_flags_bad_assignment_with_face_pair() {
    let out = run(&["validate", &fixture("bad_assign.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], json!(false));
    let text = v["violations"][0].as_str().unwrap();
    assert!(text.contains("face pair"), "{text}");
}

#[test]
fn malformed_bundle_is_exit_2() {
    let path = std::env::temp_dir().join("strata-malformed.json");
    std::fs::write(&path, "{\"cone\": 3}").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["validate", "/nonexistent/bundle.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn resolve_interval_upset_has_expected_summands() {
    let out = run(&["resolve", "--kind", "upset", &fixture("interval.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], json!("upset"));
    // Degree 0: k[[0,∞)] (4 faces). Degree 1: k[[1,∞)] (2 faces).
    assert_eq!(v["terms"]["0"][0]["region"]["faces"].as_array().unwrap().len(), 4);
    assert_eq!(v["terms"]["1"][0]["region"]["faces"].as_array().unwrap().len(), 2);
}

#[test]
fn resolve_downset_with_adjust_closes_regions() {
    let out = run(&["resolve", "--kind", "downset", "--adjust", &fixture("interval.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // Closures: (−∞,1] (4 faces) in degree 0 and (−∞,0] (2 faces) in −1.
    assert_eq!(v["terms"]["0"][0]["region"]["faces"].as_array().unwrap().len(), 4);
    assert_eq!(v["terms"]["-1"][0]["region"]["faces"].as_array().unwrap().len(), 2);
}

#[test]
fn stratify_square_emits_single_stratum() {
    let out = run(&["stratify", &fixture("square.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let strata = v["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 1);
    assert_eq!(strata[0]["homology"]["0"], json!(1));
    // (0,1]² is a union of 4 faces of the box arrangement.
    assert_eq!(strata[0]["region"]["faces"].as_array().unwrap().len(), 4);
}

#[test]
fn stalk_reports_ranks_at_point() {
    let out = run(&["stalk", "--point", "1/2", &fixture("interval.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["homology"]["0"], json!(1));
    let out0 = run(&["stalk", "--point", "0", &fixture("interval.json")]);
    let v0: Value = serde_json::from_slice(&out0.stdout).unwrap();
    assert_eq!(v0["homology"].as_object().unwrap().len(), 0);
    // Wrong arity is an input error.
    let bad = run(&["stalk", "--point", "1,2", &fixture("interval.json")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn check_passes_and_is_deterministic() {
    let a = run(&["check", &fixture("interval.json")]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["check", &fixture("interval.json")]);
    assert_eq!(a.stdout, b.stdout, "same bundle must produce identical bytes");
    let stdout = String::from_utf8_lossy(&a.stdout);
    assert!(stdout.contains("PASS upset resolution"), "{stdout}");
    assert!(stdout.contains("PASS downset resolution"), "{stdout}");
    // Parallel mode produces the same report.
    let c = run(&["check", "--parallel", "2", &fixture("interval.json")]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn resolve_output_is_deterministic() {
    let a = run(&["resolve", "--kind", "upset", &fixture("square.json")]);
    let b = run(&["resolve", "--kind", "upset", &fixture("square.json")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn field_flag_selects_prime_field() {
    let out = run(&["check", "--field", "fp:5", &fixture("interval.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = run(&["check", "--field", "fp:6", &fixture("interval.json")]);
    assert_eq!(bad.status.code(), Some(2));
}
