//! End-to-end runs of the binary: job files in, reports and exit codes out.

use std::path::Path;
use std::process::{Command, Output};

fn run_tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opcoalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_job(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const COM_POINTED: &str = r#"{
  "instance": { "kind": "pointed_sets", "bound": 3 },
  "operad": { "builtin": "com", "max_arity": 3 },
  "run": { "budget": 2000000 }
}"#;

const DIVISOR_FOX: &str = r#"{
  "instance": {
    "kind": "lattice",
    "names": ["1", "2", "3", "4", "6", "12"],
    "leq_pairs": [[0,1],[0,2],[1,3],[1,4],[2,4],[3,5],[4,5]]
  },
  "operad": { "builtin": "com", "max_arity": 3 }
}"#;

#[test]
fn equivalence_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "com.json", COM_POINTED);
    let out = run_tool(&["verify-equivalence", &job]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("PASS"), "{text}");
}

#[test]
fn fox_run_lists_six_coalgebras() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "fox.json", DIVISOR_FOX);
    let out = run_tool(&["fox", &job]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("coalgebra_count: 6"), "{text}");
}

#[test]
fn corrupted_operad_exits_one_with_witness() {
    // an explicit job whose transposition action is constant: parses, but
    // the axioms fail
    let job_text = r#"{
      "instance": { "kind": "pointed_sets", "bound": 2 },
      "operad": {
        "max_arity": 2,
        "components": [1, 1, 2],
        "unit": 0,
        "partial": [
          {"m": 1, "n": 0, "i": 1, "table": [0]},
          {"m": 1, "n": 1, "i": 1, "table": [0]},
          {"m": 1, "n": 2, "i": 1, "table": [0, 1]},
          {"m": 2, "n": 0, "i": 1, "table": [0, 0]},
          {"m": 2, "n": 0, "i": 2, "table": [0, 0]},
          {"m": 2, "n": 1, "i": 1, "table": [0, 1]},
          {"m": 2, "n": 1, "i": 2, "table": [0, 1]}
        ],
        "actions": [
          {"arity": 2, "perm": [1, 0], "table": [0, 0]}
        ]
      }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "corrupt.json", job_text);
    let out = run_tool(&["check-operad", &job]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("FAIL"), "{text}");
    assert!(text.contains("action"), "{text}");
    // every other subcommand refuses to run on it (gate at load)
    let out = run_tool(&["verify-equivalence", &job]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_exits_two_with_field_path() {
    let job_text = r#"{
      "instance": { "kind": "pointed_sets", "bound": 2 },
      "operad": { "builtin": "com", "max_arity": 2 },
      "run": { "budget": "lots" }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "bad.json", job_text);
    let out = run_tool(&["check-operad", &job]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("run.budget"), "{err}");
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = run_tool(&["frobnicate", "nowhere.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fox_on_non_cartesian_instance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "com.json", COM_POINTED);
    let out = run_tool(&["fox", &job]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structured_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "com.json", COM_POINTED);
    let first = run_tool(&["verify-comonad-laws", &job, "--format", "structured"]);
    let second = run_tool(&["verify-comonad-laws", &job, "--format", "structured"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    // and it parses back as a JSON document with the embedded bounds
    let value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(value["params"]["truncation"], serde_json::json!(3));
}

#[test]
fn roster_and_strength_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "com.json", COM_POINTED);
    let out = run_tool(&[
        "compute-comonad",
        &job,
        "--roster",
        "1,2",
        "--strength",
        "2",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["params"]["strength"], serde_json::json!("2"));
    assert_eq!(
        value["params"]["roster"],
        serde_json::json!(["pointed-1", "pointed-2"])
    );
}
