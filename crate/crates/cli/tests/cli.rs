//! End-to-end tests of the `dold` binary: exit-status contract, report
//! determinism at the byte level, and the failure paths.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn dold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixtures_arg() -> String {
    fixtures_dir().to_str().unwrap().to_string()
}

#[test]
fn single_request_passes_with_exit_zero() {
    let out = dold(&[
        "run",
        "--input",
        r#"{"kind":"grassmann","n":2,"k":1,"m":2,"checks":["hilbert"]}"#,
        "--fixtures-dir",
        &fixtures_arg(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["hilbert"], serde_json::json!([1, 1, 2, 1, 1, 0, 0]));
    assert_eq!(report["checks"][0]["verdict"], "PASS");
}

#[test]
fn checks_flag_overrides_the_request() {
    let out = dold(&[
        "run",
        "--input",
        r#"{"kind":"sphere","n":2,"m":2}"#,
        "--checks",
        "hilbert,regular-sequence",
        "--fixtures-dir",
        &fixtures_arg(),
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("hilbert: PASS"), "{text}");
    assert!(text.contains("regular-sequence: PASS"), "{text}");
}

#[test]
fn rejected_pair_fails_with_vertex_witness() {
    let out = dold(&[
        "run",
        "--input",
        r#"{"kind":"torus","pair_file":"torus/bad_lambda.json","m":2,"checks":["hilbert"]}"#,
        "--fixtures-dir",
        &fixtures_arg(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["name"], "unimodularity");
    assert_eq!(report["checks"][0]["verdict"], "FAIL");
    assert_eq!(report["checks"][0]["witness"]["type"], "vertex");
    assert_eq!(report["checks"][0]["witness"]["determinant"], -2);
}

#[test]
fn malformed_input_exits_two_with_location() {
    let out = dold(&["run", "--input", r#"{"kind": "#]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn batch_isolates_malformed_entries() {
    let out = dold(&[
        "batch",
        "--input",
        r#"[{"kind":"unknown"},{"kind":"sphere","n":2,"m":2,"checks":["hilbert"]}]"#,
        "--fixtures-dir",
        &fixtures_arg(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows[0]["error"].as_str().unwrap().contains("malformed"));
    assert_eq!(rows[1]["report"]["checks"][0]["verdict"], "PASS");
}

#[test]
fn empty_batch_exits_zero() {
    let out = dold(&["batch", "--input", "[]"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[]");
}

#[test]
fn full_corpus_is_deterministic_and_green() {
    let corpus = fixtures_dir().join("requests/corpus.json");
    let corpus = corpus.to_str().unwrap();
    let first = dold(&["batch", "--input", corpus, "--fixtures-dir", &fixtures_arg()]);
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stdout)
    );
    let second = dold(&["batch", "--input", corpus, "--fixtures-dir", &fixtures_arg()]);
    let sequential = dold(&[
        "batch",
        "--input",
        corpus,
        "--fixtures-dir",
        &fixtures_arg(),
        "--jobs",
        "1",
    ]);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");
    assert_eq!(first.stdout, sequential.stdout, "byte-identical across job counts");
}
