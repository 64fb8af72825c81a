use std::process::{Command, Output};

const REF: [&str; 8] = ["--p", "0.1", "--q", "0.1", "--mu-h", "0.45", "--mu-l", "0.35"];

fn prioq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prioq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_ref(head: &[&str], tail: &[&str]) -> Vec<String> {
    head.iter()
        .chain(REF.iter())
        .chain(tail.iter())
        .map(|s| s.to_string())
        .collect()
}

fn run(args: Vec<String>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    prioq(&refs)
}

#[test]
fn analyze_reference_is_geometric() {
    let out = run(with_ref(&["analyze"], &["--json"]));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["regime"]["tag"], "exact_geometric");
    assert_eq!(v["schema_version"], "1");
    let names: Vec<_> = v["asymptotics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"low_boundary".to_string()));
    assert!(names.contains(&"high_marginal".to_string()));
}

#[test]
fn analyze_respects_joint_lists() {
    let out = run(with_ref(&["analyze"], &["--json", "--joint-i", "5", "--joint-j", "2"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("low_joint_i5"));
    assert!(text.contains("high_joint_j2"));
    assert!(!text.contains("low_joint_i1\""));
}

#[test]
fn csv_output_has_header() {
    let out = run(with_ref(&["analyze"], &["--csv"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("name"));
}

#[test]
fn unstable_is_input_error() {
    let out = prioq(&["analyze", "--p", "0.3", "--q", "0.3", "--mu-h", "0.2", "--mu-l", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable"));
    assert!(out.stdout.is_empty());
}

#[test]
fn faster_low_class_is_rejected() {
    let out = prioq(&["analyze", "--p", "0.1", "--q", "0.1", "--mu-h", "0.35", "--mu-l", "0.45"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu_l <= mu_h"));
}

#[test]
fn simplex_violation_is_input_error() {
    let out = prioq(&["analyze", "--p", "0.1", "--q", "0.1", "--mu-h", "0.45", "--mu-l", "0.45"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn critical_round_trip_lands_on_half_power() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("crit.cfg");
    let cfg_s = cfg.to_str().unwrap();
    let out = run(with_ref(
        &["critical"],
        &["--scan", "q", "--range", "0.05,0.1", "--out", cfg_s],
    ));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = prioq(&["analyze", "--config", cfg_s, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["regime"]["tag"], "geometric_half_power");
}

#[test]
fn critical_without_sign_change_exits_5() {
    let out = run(with_ref(&["critical"], &["--range", "0.08,0.1"]));
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn tiny_truncation_fails_validation() {
    let out = run(with_ref(&["validate"], &["--trunc", "20,20"]));
    let code = out.status.code();
    assert!(code == Some(3) || code == Some(4), "{code:?}");
}

#[test]
fn solve_writes_normalized_grid() {
    let out = run(with_ref(&["solve"], &["--trunc", "25,25"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,pi"));
    let total: f64 = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn missing_params_is_input_error() {
    let out = prioq(&["analyze", "--p", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}
