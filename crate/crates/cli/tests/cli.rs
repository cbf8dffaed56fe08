use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn covpar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covpar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn example_covers_validate() {
    for name in ["cover_a.json", "cover_b.json", "etale_c3.json"] {
        let o = covpar(&["validate", data(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn broken_relation_names_the_convention() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "bad.json",
        r#"{"version": 1, "base_genus": 0, "degree": 3,
            "branch": [{"label": "x1", "perm": "(1 2)"}, {"label": "x2", "perm": "(1 3)"}]}"#,
    );
    let o = covpar(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("commutators first, then branch in listed order"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn every_violation_is_listed() {
    let dir = TempDir::new().unwrap();
    // intransitive, duplicate label, characteristic too small
    let path = write(
        &dir,
        "bad.json",
        r#"{"version": 1, "base_genus": 0, "degree": 4, "characteristic": 2,
            "branch": [{"label": "x", "perm": "(1 2)"}, {"label": "x", "perm": "(1 2)"}]}"#,
    );
    let o = covpar(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    for kind in ["NotTransitive", "DuplicateLabel", "Tameness"] {
        assert!(err.contains(kind), "{kind} missing from {err}");
    }
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "bad.json",
        r#"{"version": 1, "base_genus": 0, "degree": 3, "branch": [{"label": "x1", "perm": "(1 2"}]}"#,
    );
    assert_eq!(covpar(&["validate", &path]).status.code(), Some(2));
    assert_eq!(covpar(&["analyze", &path]).status.code(), Some(2));
    assert_eq!(covpar(&["validate", "/nonexistent/cover.json"]).status.code(), Some(2));
}

#[test]
fn analyze_cover_a_text() {
    let o = covpar(&["analyze", data("cover_a.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "genus_x: 0",
        "degree_pushforward: -2",
        "  x1: {(0,2),(1/2,1)}",
        "  x1: {(0,1),(1/2,1)}",
        "verdict: Stable",
    ] {
        assert!(out.contains(line), "{line:?} missing from\n{out}");
    }
}

#[test]
fn analyze_json_is_stable_and_parseable() {
    let path = data("cover_b.json");
    let args = ["analyze", path.to_str().unwrap(), "--format", "json"];
    let a = covpar(&args);
    let b = covpar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["genus_x"], 0);
    assert_eq!(v["degree_pushforward"], -3);
    assert_eq!(v["stability"]["verdict"], "NotStable");
}

#[test]
fn closure_cap_skips_without_failing() {
    let path = data("cover_a.json");
    let o = covpar(&["analyze", path.to_str().unwrap(), "--format", "json", "--closure-cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closure_check"]["status"], "skipped: cap");

    let o = covpar(&["analyze", path.to_str().unwrap(), "--skip-closure-check"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn analyze_rejects_invalid_datum() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "bad.json",
        r#"{"version": 1, "base_genus": 0, "degree": 3,
            "branch": [{"label": "x1", "perm": "(1 2)"}, {"label": "x2", "perm": "(1 3)"}]}"#,
    );
    assert_eq!(covpar(&["analyze", &path]).status.code(), Some(1));
}

#[test]
fn enumerate_census() {
    let o = covpar(&["enumerate", "--degree", "3", "--types", "2,2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("classes: 4"), "{out}");
    assert!(out.contains("Stable: 4"), "{out}");

    let o = covpar(&["enumerate", "--degree", "4", "--types", "4,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict_counts"]["NotStable"], 1);
}

#[test]
fn enumerate_cap_is_named() {
    let o = covpar(&["enumerate", "--degree", "9", "--types", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("degree"));

    let o = covpar(&["enumerate", "--degree", "5", "--types", "2,2,2,2,2,2", "--max-search", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cap exceeded"), "{}", stderr(&o));
}

#[test]
fn pullback_reports_multiplicativity() {
    let o = covpar(&[
        "pullback",
        data("parabolic.json").to_str().unwrap(),
        data("profile.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["multiplicativity"], "pass");
    assert_eq!(v["par_deg_result"], "3/2");
}

#[test]
fn pullback_missing_fiber_exits_1() {
    let dir = TempDir::new().unwrap();
    let profile = write(
        &dir,
        "profile.json",
        r#"{"cover_degree": 2, "fibers": {"p": [{"label": "p1", "multiplicity": 2}]}}"#,
    );
    let o = covpar(&["pullback", data("parabolic.json").to_str().unwrap(), &profile]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("\"q\""), "{}", stderr(&o));
}
