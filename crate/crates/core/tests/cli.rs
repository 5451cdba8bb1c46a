use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn octoeig(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_octoeig"))
        .args(args)
        .env_remove(octoeig::tolerance::TOLERANCE_ENV)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("every stdout line is JSON"))
        .collect()
}

fn record<'a>(recs: &'a [Value], tag: &str) -> &'a Value {
    recs.iter().find(|r| r["record"] == tag).unwrap_or_else(|| panic!("no {tag} record"))
}

const EXAMPLE: &str = r#"{"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}}"#;

#[test]
fn mul_prints_product() {
    let out = octoeig(&["mul", "i", "j"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let product = record(&recs, "product");
    assert_eq!(product["value"][3], 1.0);
}

#[test]
fn associator_of_independent_units_is_nonzero() {
    let out = octoeig(&["associator", "i", "j", "l"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let value: Vec<f64> = serde_json::from_value(record(&recs, "associator")["value"].clone()).unwrap();
    let norm = value.iter().map(|c| c * c).sum::<f64>().sqrt();
    assert!((norm - 2.0).abs() < 1e-12);
}

#[test]
fn eigen2_reads_document_from_file_and_stdin() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("cli_example.json");
    std::fs::write(&path, EXAMPLE).unwrap();
    let from_file = octoeig(&["eigen2", "--input", path.to_str().unwrap(), "--side", "left", "--vector", "1,k"], None);
    let from_stdin = octoeig(&["eigen2", "--input", "-", "--side", "left", "--vector", "1,k"], Some(EXAMPLE));
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_stdin.stdout);
    let recs = records(&from_file);
    let pair = record(&recs, "pair");
    let lambda: Vec<f64> = serde_json::from_value(pair["lambda"].clone()).unwrap();
    assert!((lambda[0] - 1.0).abs() < 1e-12 && (lambda[2] - 1.0).abs() < 1e-12);
}

#[test]
fn decompose_right_reports_witness() {
    let out = octoeig(&["decompose", "--matrix", "1,1,-i", "--side", "right", "--lambda", "1+kl"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let d = record(&recs, "right_decomposition");
    assert!(d["nonassociative_witness"].as_f64().unwrap() > 0.5);
}

#[test]
fn matrix_outside_family_fails_with_diagnostic() {
    let out = octoeig(&["eigen2", "--matrix", "1,2,-i", "--side", "left"], None);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("requires p = m"), "{stderr}");
}

#[test]
fn real_eigen2_succeeds_on_any_matrix() {
    let out = octoeig(&["real-eigen2", "--matrix", "1,2,1+i+l"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.iter().filter(|r| r["record"] == "pair").count(), 2);
}

#[test]
fn spin_grid_lines() {
    let out = octoeig(&["spin", "--grid", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert!(recs.iter().filter(|r| r["record"] == "spin_eigenvalue").count() >= 12);
    record(&recs, "commutator");
}

#[test]
fn eigen3_embedded_search_is_deterministic() {
    let args = ["eigen3", "--embed", "1,1,-i,5", "--block", "23", "--restarts", "4", "--nonreal", "--seed", "3"];
    let a = octoeig(&args, None);
    let b = octoeig(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let recs = records(&a);
    record(&recs, "search_diagnostics");
    assert!(recs.iter().any(|r| r["record"] == "eigen3_pair"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["mul", "i"],
        &["mul", "i", "q"],
        &["verify", "--samples", "0"],
        &["eigen2", "--matrix", "1,1"],
        &["eigen3", "--embed", "1,1,-i,5", "--block", "14"],
    ] {
        let out = octoeig(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_documents_exit_two() {
    for doc in [
        "not json",
        r#"{"version": "2", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0,0,0,0,0,0,0,0]}}"#,
        r#"{"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0,0,0]}}"#,
        r#"{"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0,0,0,0,0,0,0,0], "x": 1}}"#,
    ] {
        let out = octoeig(&["eigen2", "--input", "-"], Some(doc));
        assert_eq!(out.status.code(), Some(2), "{doc}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn tolerance_override_is_echoed() {
    let out = Command::new(env!("CARGO_BIN_EXE_octoeig"))
        .args(["mul", "i", "j"])
        .env(octoeig::tolerance::TOLERANCE_ENV, "1e-8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let config = record(&recs, "config");
    assert_eq!(config["tolerance"]["eps_solve"], 1e-8);

    let bad = Command::new(env!("CARGO_BIN_EXE_octoeig"))
        .args(["mul", "i", "j"])
        .env(octoeig::tolerance::TOLERANCE_ENV, "-1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(octoeig(&["--help"], None).status.code(), Some(0));
}
