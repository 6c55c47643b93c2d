use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_domkit"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn word_reduce_prints_reduced_form() {
    let (code, out, _) = run(&["word", "reduce", "x y y^-1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x\n");
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, out, err) = run(&["group", "info", "missing.cay"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("missing.cay"));
}

#[test]
fn malformed_file_cites_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cay");
    std::fs::write(&path, "order 2\n0 1\n1 x\n").unwrap();
    let (code, _, err) = run(&["group", "info", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 3"), "{err}");
}

#[test]
fn validate_reports_axiom_failures_as_negative() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.cay");
    std::fs::write(&path, "order 2\n1 0\n0 1\n").unwrap();
    let (code, out, _) = run(&["group", "validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("valid: false"));
    let (code, out, _) = run(&["group", "validate", fixture("s4.cay").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("order: 24"));
}

#[test]
fn certify_nil2_with_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.txt");
    std::fs::write(&fam, "group self\nclose-under-quotients\n").unwrap();
    let (code, out, err) = run(&["certify", "nil2", "--params", "4,4,4", "--prime", "2", "--family", fam.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("nontrivial: true"));
    assert!(out.contains("element: (0,0,2)"));
    assert!(out.contains("verdict: VALID"));
    let (code, _, err) = run(&["certify", "nil2", "--params", "2,2,2", "--prime", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("precondition"));
}

#[test]
fn keyvalue_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.txt");
    let g21 = fixture("g21.cay");
    let (code, out, _) = run(&[
        "--format",
        "keyvalue",
        "--out",
        out_path.to_str().unwrap(),
        "certify",
        "metabelian",
        "--group",
        g21.to_str().unwrap(),
        "--d",
        "2",
        "--x",
        "a",
        "--y",
        "b",
        "--z",
        "ab",
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let report = std::fs::read_to_string(&out_path).unwrap();
    assert!(report.lines().all(|l| l.contains('=')));
    assert!(report.contains("valid=true"));
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let d4 = fixture("d4.cay");
    let args = ["dominion", "approx", "--group", d4.to_str().unwrap(), "--subgroup", "s"];
    let (c1, a, _) = run(&args);
    let mut seq = vec!["--jobs", "1"];
    seq.extend(args);
    let (c2, b, _) = run(&seq);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("relative to family"));
}

#[test]
fn other_subcommands_smoke() {
    let s3 = fixture("s3.cay");
    let s3 = s3.to_str().unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let c2 = tmp.path().join("c2.cay");
    std::fs::write(&c2, "order 2\n0 1\n1 0\n").unwrap();
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["word", "check-identity", "x y", "y x", "--group", s3], 1, "holds: false"),
        (vec!["word", "check-identity", "[x,y]^3", "e", "--group", s3], 0, "holds: true"),
        (vec!["word", "identities", "--seed", "5", "--count", "20"], 0, "failures: 0"),
        (vec!["nil2", "order", "[x,y]", "--params", "4,4,4"], 0, "order: 4"),
        (vec!["nil2", "order", "x", "--params", "0,0,0"], 0, "order: infinite"),
        (vec!["nil2", "realize", "--params", "2,2,2"], 0, "order 8"),
        (vec!["group", "derived-series", s3], 0, "solvable length: 2"),
        (vec!["group", "homs", s3, "--target", c2.to_str().unwrap()], 0, "count: 2"),
        (vec!["group", "quotient", s3, "--normal-gens", "231"], 0, "order 2"),
        (vec!["dominion", "witness", "--group", s3, "--subgroup", "231", "--element", "213"], 0, "witness: true"),
        (vec!["dominion", "closure", "--group", s3], 0, "holds: true"),
        (vec!["certify", "lemma31", "--group", s3], 0, "violations: 0"),
    ];
    for (args, code, needle) in cases {
        let (c, out, err) = run(&args);
        assert_eq!(c, code, "{args:?}: {err}");
        assert!(out.contains(needle), "{args:?}: {out}");
    }
}
