use std::path::PathBuf;
use std::process::Command;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_radform")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn config(name: &str) -> String {
    configs().join(name).to_str().unwrap().to_string()
}

/// Output without the header line.
fn body(s: &str) -> &str {
    assert!(s.starts_with("# radform "));
    &s[s.find('\n').unwrap() + 1..]
}

#[test]
fn check_z4() {
    let (code, out, _) = run(&["check", "--config", &config("z4_regular.json")]);
    assert_eq!(code, 0);
    let n0 = out.split("N0 = ").nth(1).unwrap();
    assert!(n0.contains("beta={0,2}"));
    assert!(n0.contains("RF=yes"));
}

#[test]
fn check_col() {
    let (code, out, _) = run(&["check", "--config", &config("col.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("RF=no 2-primal=no"));
    assert!(out.contains("prime=yes completely_prime=no"));
}

#[test]
fn broken_tables_exit_2_with_witness() {
    let (code, _, err) = run(&["check", "--config", &config("broken_tables.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("distributivity fails at ("), "{err}");
}

#[test]
fn malformed_and_missing_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"module\": {\"kind\": \"regular\", \"ring\": {\"kind\": \"cyclic\"}}\n}").unwrap();
    let (code, _, err) = run(&["check", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("missing field `n` at line "), "{err}");
    let (code, _, _) = run(&["lattice", "--config", "/nonexistent/config.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["check"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--filter", "C99"]);
    assert_eq!(code, 2);
}

#[test]
fn lattice_v2_and_zero_module() {
    let (code, out, _) = run(&["lattice", "--config", &config("v2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("5 submodules, 6 cover edges"));
    assert_eq!(out.lines().filter(|l| l.contains(" < ")).count(), 6);

    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, r#"{"module": {"kind": "regular", "ring": {"kind": "cyclic", "n": 1}}}"#).unwrap();
    let (code, out, _) = run(&["lattice", "--config", zero.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("1 submodules, 0 cover edges"));
}

#[test]
fn verify_filter_on_commutative_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"corpus": {"include_matrix": false, "cyclic_max": 8}, "claims": ["C1"]}"#).unwrap();
    let (code, out, _) = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("0 FAILED"));
    assert!(!out.contains("\nC2 "));
}

#[test]
fn reports_are_identical_apart_from_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"corpus": {"cyclic_max": 6, "include_matrix": false}}"#).unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let (_, out_a, _) = run(&["verify", "--config", cfg.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    let (_, out_b, _) = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--threads",
        "1",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(body(&out_a), body(&out_b));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn hunt_writes_findings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"corpus": {"cyclic_max": 6, "include_matrix": false}, "target": "Q2"}"#).unwrap();
    let out = dir.path().join("f.json");
    let (code, stdout, _) = run(&["hunt", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let f: radform::hunter::Findings = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(f.examined, f.budget_consumed);
    assert!(stdout.contains(&format!("{} hits", f.hits.len())));
    let (code, _, _) = run(&["hunt", "--target", "Q9"]);
    assert_eq!(code, 2);
}

#[cfg(feature = "fault-injection")]
#[test]
fn negated_claim_fails_through_the_binary() {
    let (code, out, _) = run(&["verify", "--filter", "C2", "--negate", "C2"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAILED C2 on "));
}
