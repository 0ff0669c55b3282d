//! The installed binary against the fixtures: report lines and exit codes.

use std::process::Command;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bigbracket")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn heisenberg_is_poisson() {
    let (code, out, _) = run(&["check-poisson", "--setup", &fixture("heis3.bb"), "--sigma", "sigma"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("MC residual: 0"));
}

#[test]
fn witness_is_a_mathematical_failure() {
    let (code, out, err) = run(&["check-poisson", "--setup", &fixture("heis3.bb"), "--sigma", "witness"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("MC residual: x3*th1*th2*th3"));
    assert!(err.is_empty());
}

#[test]
fn invert_on_the_plane() {
    let (code, out, _) = run(&["invert", "--setup", &fixture("r2.bb"), "--bivector", "th1*th2"]);
    assert_eq!((code, out.as_str()), (0, "tau: xi1*xi2\nId check: PASS\n"));
}

#[test]
fn coordinate_bracket() {
    for name in ["r2.bb", "heis3.bb", "aff1.bb"] {
        let (code, out, _) = run(&["bracket", "--setup", &fixture(name), "x1", "p1"]);
        assert_eq!((code, out.as_str()), (0, "bracket: 1\n"), "{name}");
    }
}

#[test]
fn action_fixtures() {
    let (code, out, _) = run(&["action-check", "--setup", &fixture("aff1.bb")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("(A): 0\n(B): 0\n(C): 0\n(D): 0\n"));
    let (code, out, _) = run(&["action-check", "--setup", &fixture("aff1_broken.bb")]);
    assert_eq!(code, 1);
    assert!(out.contains("(B): x1*th1*eps1*eps2\n"));
    let (code, _, _) = run(&["action-check", "--setup", &fixture("so3.bb")]);
    assert_eq!(code, 0);
}

#[test]
fn courant_and_dirac() {
    let (code, out, _) = run(&["courant-check", "--setup", &fixture("aff1_double.bb")]);
    assert_eq!(code, 0);
    assert_eq!(out, "triples: 64\nLoday: PASS\nmetric symmetric: PASS\nmetric invariant: PASS\n");
    let (code, out, _) = run(&["dirac-check", "--setup", &fixture("heis3.bb")]);
    assert_eq!(code, 0);
    assert!(out.contains("Dirac: PASS"));
}

#[test]
fn tool_errors_exit_two() {
    let (code, out, err) = run(&["check-structure"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("--setup"));
    let (code, _, err) = run(&["bracket", "--setup", &fixture("r2.bb"), "x1", "xi1^2"]);
    assert_eq!(code, 2);
    assert!(err.contains("error:"));
    let (code, _, _) = run(&["action-check", "--setup", &fixture("r2.bb")]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["check-poisson", "--setup", "/nonexistent.bb"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_byte_deterministic() {
    let args = ["diff", "--setup", &fixture("so3.bb"), "--gamma-sigma", "x1*x2*th3"];
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
}
