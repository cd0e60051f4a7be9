//! Black-box tests of the `speclab` binary: exit codes, output formats, and
//! byte-level determinism, all through temp files and real process spawns.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn speclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speclab"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).expect("temp file writes");
    path
}

/// Real rotation matrix with spectrum {i, -i}.
const ROTATION: &str = r#"{"dim":2,"entries":[[0.0,0.0],[-1.0,0.0],[1.0,0.0],[0.0,0.0]]}"#;
const E1: &str = r#"{"entries":[[1.0,0.0],[0.0,0.0]]}"#;

#[test]
fn analyze_reports_the_rotation_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "rot.json", ROTATION);
    let x = write_file(dir.path(), "x.json", E1);
    let out = speclab(&[
        "analyze",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        x.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let points = report["local_spectrum"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    let lambdas: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p["lambda"][0].as_f64().unwrap(), p["lambda"][1].as_f64().unwrap()))
        .collect();
    assert_eq!(lambdas, vec![(0.0, -1.0), (0.0, 1.0)]);
    assert!((report["radius"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(
        report["growth"]["polynomial_bidirectional"],
        serde_json::Value::Bool(true)
    );
}

#[test]
fn analyze_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "rot.json", ROTATION);
    let x = write_file(dir.path(), "x.json", E1);
    let args = [
        "analyze",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        x.to_str().unwrap(),
        "--seed",
        "17",
    ];
    let first = speclab(&args);
    let second = speclab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn analyze_rejects_malformed_and_mismatched_input() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "rot.json", ROTATION);
    let empty = write_file(dir.path(), "empty.json", r#"{"entries":[]}"#);
    let out = speclab(&[
        "analyze",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("malformed vector"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let long = write_file(
        dir.path(),
        "long.json",
        r#"{"entries":[[1.0,0.0],[0.0,0.0],[0.0,0.0]]}"#,
    );
    let out = speclab(&[
        "analyze",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        long.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    let out = speclab(&[
        "analyze",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_unknown_suites_and_out_of_range_alpha() {
    let out = speclab(&["verify", "--suite", "thm9.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("thm2.1"),
        "the error should list the known suites"
    );

    let out = speclab(&["verify", "--suite", "thm2.11", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn verify_output_is_deterministic_and_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: Option<&str>| -> Vec<u8> {
        let path = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_speclab"));
        cmd.args([
            "verify", "--suite", "prop2.5", "--seed", "99", "--out",
            path.to_str().unwrap(),
        ]);
        if let Some(w) = workers {
            cmd.env("SPECLAB_WORKERS", w);
        }
        let out = cmd.output().expect("binary spawns");
        assert_eq!(out.status.code(), Some(0));
        fs::read(&path).expect("output file written")
    };
    let a = run("a.json", None);
    let b = run("b.json", None);
    let c = run("c.json", Some("3"));
    assert_eq!(a, b, "same seed must give identical bytes");
    assert_eq!(a, c, "worker count must not change the output");
}

#[test]
fn verify_csv_summary_has_the_documented_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("summary.csv");
    let out = speclab(&[
        "verify", "--suite", "cor2.8", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("run_id,suite,seed,cases,passed,failed,not_applicable")
    );
    let row = lines.next().expect("one data row");
    assert!(row.starts_with("cor2.8-0x0000000000c0ffee,cor2.8,"), "row: {row}");
}

#[test]
fn sweep_vector_mode_emits_the_documented_csv() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "rot.json", ROTATION);
    let x = write_file(dir.path(), "x.json", E1);
    let out = speclab(&[
        "sweep",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        x.to_str().unwrap(),
        "--t-max",
        "2",
        "--step",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,norm,bound");
    assert!(
        !lines.iter().any(|l| l.starts_with("exponential")),
        "a rotation orbit is bounded; no exponential flag row"
    );
    assert_eq!(lines.len(), 1 + 9, "header plus the nine grid rows");
    // The rotation orbit of a unit vector has constant norm 1.
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 3);
        let norm: f64 = fields[1].parse().unwrap();
        assert!((norm - 1.0).abs() < 1e-10, "row: {row}");
    }
}

#[test]
fn sweep_pair_mode_matches_the_shear_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(
        dir.path(),
        "a.json",
        r#"{"dim":2,"entries":[[0.0,0.0],[0.0,0.0],[1.0,0.0],[0.0,0.0]]}"#,
    );
    let t = write_file(
        dir.path(),
        "t.json",
        r#"{"dim":2,"entries":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}"#,
    );
    let out = speclab(&[
        "sweep",
        "--pair",
        a.to_str().unwrap(),
        t.to_str().unwrap(),
        "--t-max",
        "2",
        "--step",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text
        .lines()
        .find(|l| l.starts_with("2,"))
        .expect("row at t = 2");
    let norm: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((norm - 5.0_f64.sqrt()).abs() < 1e-12, "row: {row}");
}

#[test]
fn sweep_pair_mode_flags_exponential_growth() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(
        dir.path(),
        "a.json",
        r#"{"dim":2,"entries":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[-1.0,0.0]]}"#,
    );
    let t = write_file(
        dir.path(),
        "t.json",
        r#"{"dim":2,"entries":[[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]]}"#,
    );
    let out = speclab(&[
        "sweep",
        "--pair",
        a.to_str().unwrap(),
        t.to_str().unwrap(),
        "--t-max",
        "4",
        "--step",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("exponential,,"));
}

#[test]
fn sweep_rejects_conflicting_modes_and_bad_grids() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "rot.json", ROTATION);
    let x = write_file(dir.path(), "x.json", E1);
    let out = speclab(&[
        "sweep",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        x.to_str().unwrap(),
        "--pair",
        m.to_str().unwrap(),
        m.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "clap conflict is a usage error");

    let out = speclab(&[
        "sweep",
        "--input",
        m.to_str().unwrap(),
        "--vector",
        x.to_str().unwrap(),
        "--step",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_merges_runs_and_rejects_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, name: &str| -> PathBuf {
        let path = dir.path().join(name);
        let out = speclab(&[
            "verify", "--suite", "cor2.8", "--seed", seed, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        path
    };
    let first = run("1", "one.json");
    let second = run("2", "two.json");
    let first_again = run("1", "one-again.json");

    let merged_path = dir.path().join("merged.json");
    let out = speclab(&[
        "report",
        first.to_str().unwrap(),
        second.to_str().unwrap(),
        first_again.to_str().unwrap(),
        "--out",
        merged_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let merged: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&merged_path).unwrap()).unwrap();
    let runs = merged["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2, "duplicate run ids with equal payloads merge");
    assert_eq!(runs[0]["run_id"], "cor2.8-0x0000000000000001");
    assert_eq!(runs[1]["run_id"], "cor2.8-0x0000000000000002");

    // Same run id, different payload: refuse to merge.
    let mut tampered: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&first).unwrap()).unwrap();
    tampered["runs"][0]["passed"] = serde_json::json!(0);
    let bad = write_file(dir.path(), "bad.json", &tampered.to_string());
    let out = speclab(&[
        "report",
        first.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("conflicting runs"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn report_summarizes_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = speclab(&[
        "verify", "--suite", "prop3.5", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv_path = dir.path().join("summary.csv");
    let out = speclab(&[
        "report",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with("run_id,suite,seed,cases,passed,failed,not_applicable\n"));
    assert!(text.contains(",prop3.5,"), "summary: {text}");
}
