//! Golden-file checks: every subcommand, byte-exact output.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (String, String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.success(),
    )
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {:?}", path))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .expect("utf8 path")
        .to_string()
}

fn check(args: &[&str], name: &str, expect_ok: bool) {
    let (stdout, stderr, ok) = run(args);
    assert_eq!(ok, expect_ok, "exit status for {:?}; stderr: {}", args, stderr);
    assert_eq!(stdout, golden(name), "stdout mismatch for {:?}", args);
}

#[test]
fn validate_text_and_json() {
    check(&["validate", "--quiver", "q2"], "validate_q2.txt", true);
    check(&["validate", "--quiver", "q1", "--format", "json"], "validate_q1.json", true);
}

#[test]
fn strings_enumeration() {
    check(&["strings", "--quiver", "q1", "--max-len", "2"], "strings_q1.jsonl", true);
    check(&["strings", "--quiver", "q3", "--max-len", "2"], "strings_q3.jsonl", true);
}

#[test]
fn complex_string_and_band() {
    check(&["complex", "--quiver", "q2", "--m", "0", "--walk", "b a"], "complex_q2.txt", true);
    check(
        &["complex", "--quiver", "q3", "--walk", "a b-", "--jordan", "2,1", "--format", "json"],
        "complex_band_q3.json",
        true,
    );
}

#[test]
fn hatstring_operations() {
    check(
        &["hatstring", "--quiver", "q1", "--walk", "a[0]", "--op", "delta"],
        "hatstring_delta_q1.txt",
        true,
    );
    check(
        &["hatstring", "--quiver", "q1", "--walk", "a[0]", "--op", "plus-both", "--format", "json"],
        "hatstring_plusboth_q1.json",
        true,
    );
}

#[test]
fn psi_string_and_band() {
    check(&["psi", "--quiver", "q1", "--walk", "a"], "psi_q1.txt", true);
    check(&["psi", "--quiver", "q3", "--walk", "a b-", "--format", "json"], "psi_band_q3.json", true);
}

#[test]
fn verify_report() {
    check(&["verify", "--quiver", "q1", "--max-len", "4", "--format", "json"], "verify_q1.json", true);
}

#[test]
fn ar_triangles_checked() {
    check(&["ar", "--quiver", "q1", "--m", "0", "--walk", "a", "--checked"], "ar_q1.txt", true);
    check(
        &[
            "ar", "--quiver", "q3", "--band", "a b-", "--jordan", "1,1", "--field", "2",
            "--checked", "--format", "json",
        ],
        "ar_band_q3.json",
        true,
    );
}

#[test]
fn component_emitters() {
    check(
        &["component", "--quiver", "q1", "--seed", "1:(1,+)", "--steps", "3", "--format", "dot"],
        "component_q1.dot",
        true,
    );
    check(
        &[
            "component", "--quiver", "q3", "--seed", "a b-", "--jordan", "1,1", "--steps", "2",
            "--format", "json",
        ],
        "component_band_q3.json",
        true,
    );
}

#[test]
fn selftest_single_quiver() {
    check(&["selftest", "--quiver", "q1", "--only", "--format", "json"], "selftest_q1.json", true);
}

#[test]
fn json_output_is_deterministic() {
    let args =
        ["component", "--quiver", "q3", "--seed", "a b-", "--jordan", "1,1", "--steps", "4",
         "--format", "json"];
    let (a, _, ok1) = run(&args);
    let (b, _, ok2) = run(&args);
    assert!(ok1 && ok2);
    assert_eq!(a, b);
}

#[test]
fn gentle_violation_fails_selftest() {
    let path = fixture("toomany.quiver");
    let (stdout, _, ok) = run(&["selftest", "--quiver", &path]);
    assert!(!ok);
    assert!(stdout.contains("FAILED"), "stdout: {}", stdout);
}

#[test]
fn parse_error_reports_position() {
    let path = fixture("badparse.quiver");
    let (_, stderr, ok) = run(&["validate", "--quiver", &path]);
    assert!(!ok);
    assert!(stderr.contains("line 2"), "stderr: {}", stderr);
    assert!(stderr.contains("column 1"), "stderr: {}", stderr);
}
