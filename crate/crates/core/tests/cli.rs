use std::fs;

use kanext::cli::{run_with, DiagnosticKind, Workspace};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kanext").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
}

fn golden(name: &str) -> String {
    fs::read_to_string(format!("tests/golden/{name}")).unwrap()
}

#[test]
fn weighted_colimit_on_the_arrow_matches_golden() {
    let (code, out, _) = run(&["weighted-colimit", "data/arrow.kan", "--method", "orthogonal", "--contraction", "--bases"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("weighted_colimit_arrow.txt"));
    assert_eq!(field(&out, "ambient"), Some("2"));
    assert_eq!(field(&out, "relations.dim"), Some("1"));
    assert_eq!(field(&out, "apex.dim"), Some("1"));
}

#[test]
fn frobenius_trivial_c2_standard_s3() {
    let (code, out, _) = run(&["frobenius", "data/s3.kan", "--sub-rep", "trivial", "--rep", "standard"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("frobenius_s3.txt"));
    assert_eq!(field(&out, "frobenius.dims"), Some("(1, 1)"));
}

#[test]
fn corrupted_group_fails_validation() {
    let (code, out, _) = run(&["validate", "data/c2_corrupted.kan"]);
    assert_eq!(code, 1);
    assert_eq!(out, golden("validate_corrupted_c2.txt"));
    assert!(field(&out, "item.C2.violation.0").unwrap().contains("no inverse"));
    assert_eq!(run(&["validate", "data/c2.kan"]).0, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join("kanext-cli-test");
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("row.kan");
    fs::write(
        &bad,
        "GROUP C2\nELEMENTS e s\nTABLE\n  e : e s\n  s : s e\nEND\nVECTFUNCTOR V\nON C2\nVARIANCE covariant\nDIMS\n  * : 2\nMATRIX s\n  0 1 1\n  1 0\nEND\n",
    )
    .unwrap();
    let (code, out, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains(":13: s: dimension mismatch"), "{err}");

    assert_eq!(run(&["suite"]).0, 2);
    assert_eq!(run(&["limit", "data/missing.kan"]).0, 2);
    assert_eq!(run(&["frobenius", "data/s3.kan"]).0, 2, "two representations of S3 need --rep");
    assert_eq!(run(&["weighted-colimit", "data/arrow.kan", "--max-ambient", "1"]).0, 2);
}

#[test]
fn methods_agree_on_apex_dimension() {
    let (_, o, _) = run(&["weighted-colimit", "data/arrow.kan", "--method", "orthogonal"]);
    let (_, q, _) = run(&["weighted-colimit", "data/arrow.kan", "--method", "quotient"]);
    assert_eq!(field(&o, "apex.dim"), field(&q, "apex.dim"));
}

#[test]
fn kan_extension_and_adjunction_from_files() {
    let (code, out, _) = run(&["kan", "data/kan.kan", "--functor", "T", "--side", "left"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "extension.dim.z"), Some("2"));
    let (code, out, _) = run(&["fubini-check", "data/kan.kan", "--kan", "K,T,S"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "end.cm.dim"), field(&out, "nat.dim"));
}

#[test]
fn suite_is_deterministic_for_a_seed() {
    let a = run(&["suite", "--seed", "3", "--cases", "4"]);
    let b = run(&["suite", "--seed", "3", "--cases", "4"]);
    assert_eq!(a, b);
    assert!(a.1.starts_with("kanext-report v1\ncommand: suite\n"));
}

#[test]
fn canonical_files_round_trip() {
    for name in ["c2.kan", "s3.kan", "arrow.kan", "sets.kan"] {
        let text = fs::read_to_string(format!("data/{name}")).unwrap();
        let mut ws = Workspace::new();
        ws.parse_str(name, &text).unwrap();
        assert_eq!(ws.serialize(), text, "{name}");
    }
    // commented files are not canonical, but their serialization is
    let text = fs::read_to_string("data/kan.kan").unwrap();
    let mut ws = Workspace::new();
    ws.parse_str("kan.kan", &text).unwrap();
    let canonical = ws.serialize();
    let mut again = Workspace::new();
    again.parse_str("canonical", &canonical).unwrap();
    assert_eq!(again.serialize(), canonical);
}

#[test]
fn diagnostics_are_distinct() {
    let cases = [
        ("CATEGORY c\nOBJECTS a\nMORPHISMS\n  i : a -> b\nEND\n", DiagnosticKind::DanglingMorphism),
        ("GROUP g\nELEMENTS e s\nTABLE\n  e : e s\nEND\n", DiagnosticKind::NonTotalComposition),
        (
            "GROUP g\nELEMENTS e\nTABLE\n  e : e\nEND\nVECTFUNCTOR v\nON g\nVARIANCE covariant\nDIMS\n  * : 1\nMATRIX e\n  x/2\nEND\n",
            DiagnosticKind::MalformedScalar,
        ),
        (
            "GROUP g\nELEMENTS e\nTABLE\n  e : e\nEND\nVECTFUNCTOR v\nON g\nVARIANCE covariant\nDIMS\n  * : 1\nMATRIX e\n  1 1\nEND\n",
            DiagnosticKind::DimensionMismatch,
        ),
    ];
    for (text, kind) in cases {
        let e = Workspace::new().parse_str("t", text).unwrap_err();
        assert_eq!(e.kind, kind, "{e}");
    }
}
