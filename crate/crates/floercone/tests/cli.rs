//! End-to-end tests of the command-line binary: output shapes, exit codes,
//! and byte-level determinism.

mod common;

use std::process::{Command, Output};

use serde_json::Value;

fn floercone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floercone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> String {
    common::fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn compute_hat_torus_25_slope_2() {
    let out = floercone(&[
        "compute",
        "--knot",
        "torus:2,5",
        "--slope",
        "2",
        "--flavor",
        "hat",
        "--format",
        "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["classes"]["0"], 1);
    assert_eq!(doc["classes"]["1"], 3);
}

#[test]
fn compute_zero_slope_is_exit_2() {
    let out = floercone(&["compute", "--knot", "torus:2,3", "--slope", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("p = 0 unsupported"), "stderr: {err}");
}

#[test]
fn compute_hat_on_fig8_fixture() {
    let knot = format!("cfk:{}", fixture("fig8.json"));
    let out = floercone(&[
        "compute", "--knot", &knot, "--slope", "2", "--flavor", "hat", "--format", "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["classes"]["0"], 3);
    assert_eq!(doc["classes"]["1"], 1);
}

#[test]
fn compute_plus_on_complex_is_exit_2() {
    let knot = format!("cfk:{}", fixture("fig8.json"));
    let out = floercone(&[
        "compute", "--knot", &knot, "--slope", "2", "--flavor", "plus",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("staircase"));
}

#[test]
fn compute_plus_json_shape() {
    let out = floercone(&[
        "compute",
        "--knot",
        "torus:2,5",
        "--slope",
        "-3",
        "--flavor",
        "plus",
        "--format",
        "json",
    ]);
    let doc = stdout_json(&out);
    let c0 = &doc["classes"]["0"];
    assert_eq!(c0["tower_bottom"], 0);
    assert_eq!(c0["torsion"][0]["length"], 1);
    assert_eq!(c0["torsion"][0]["top"], -1);
}

#[test]
fn compute_slope_range_returns_results_array() {
    let out = floercone(&[
        "compute",
        "--knot",
        "torus:2,5",
        "--slopes",
        "2..3",
        "--format",
        "json",
    ]);
    let doc = stdout_json(&out);
    let results = doc["results"].as_array().expect("results array");
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["slope"], 2);
    assert_eq!(results[1]["slope"], 3);
}

#[test]
fn compute_output_is_byte_identical_across_runs() {
    let args = [
        "compute",
        "--knot",
        "torus:2,11",
        "--slope",
        "3",
        "--flavor",
        "plus",
        "--format",
        "json",
    ];
    let a = floercone(&args);
    let b = floercone(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn obstruct_t211_slope_3_is_obstructed() {
    let out = floercone(&[
        "obstruct",
        "--knot",
        "torus:2,11",
        "--slope",
        "3",
        "--format",
        "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["overall"], "obstructed");
    let c = doc["report"]["candidates"].as_array().unwrap();
    assert!(!c.is_empty());
    assert_eq!(c[0]["verdict"], "obstructed");
    assert!(c[0]["witness"]["detail"]
        .as_str()
        .unwrap()
        .contains("coker"));
}

#[test]
fn obstruct_t211_slope_9_not_obstructed() {
    let out = floercone(&["obstruct", "--knot", "torus:2,11", "--slope", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("overall: NOT OBSTRUCTED"), "{text}");
}

#[test]
fn obstruct_t211_slope_minus_9_obstructed() {
    let out = floercone(&["obstruct", "--knot", "torus:2,11", "--slope", "-9"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("overall: OBSTRUCTED"), "{text}");
}

#[test]
fn obstruct_out_of_range_slope_reports_it() {
    let out = floercone(&["obstruct", "--knot", "torus:2,5", "--slope", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SLOPE OUTSIDE OBSTRUCTION RANGE"), "{text}");
}

#[test]
fn obstruct_fig8_is_obstructed_via_genus_one_gate() {
    let knot = format!("cfk:{}", fixture("fig8.json"));
    let out = floercone(&[
        "obstruct", "--knot", &knot, "--slope", "2", "--format", "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["overall"], "obstructed");
}

#[test]
fn obstruct_trefoil_alexander_input_rejected_outside_range() {
    // Genus one staircase: no slope satisfies 1 < |p| <= 2g-1 = 1.
    let out = floercone(&["obstruct", "--knot", "alex:t - 1 + t^-1", "--slope", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SLOPE OUTSIDE OBSTRUCTION RANGE"), "{text}");
}

#[test]
fn verify_family_passes() {
    let out = floercone(&["verify", "--family", "torus2", "--max-q", "9"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify: pass"));
}

#[test]
fn verify_single_knot_all_slopes_passes() {
    let out = floercone(&["verify", "--knot", "torus:3,5", "--all-slopes"]);
    assert!(out.status.success());
}

#[test]
fn verify_corrupted_fixture_is_exit_2() {
    let dir = std::env::temp_dir().join("floercone-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_d2.json");
    // d(a) = b, d(b) = c: d^2 != 0.
    std::fs::write(
        &path,
        r#"{
  "generators": [
    {"name": "a", "i": 0, "j": 0, "gr": 2},
    {"name": "b", "i": 0, "j": 0, "gr": 1},
    {"name": "c", "i": 0, "j": 0, "gr": 0}
  ],
  "differential": {"a": ["b"], "b": ["c"]}
}"#,
    )
    .unwrap();
    let knot = format!("cfk:{}", path.display());
    for cmd in ["compute", "verify"] {
        let args: Vec<&str> = if cmd == "compute" {
            vec!["compute", "--knot", &knot, "--slope", "2"]
        } else {
            vec!["verify", "--knot", &knot]
        };
        let out = floercone(&args);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("d^2"),
            "{cmd}"
        );
    }
}

#[test]
fn scan_t27_has_single_open_slope() {
    let out = floercone(&["scan", "--knot", "torus:2,7"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("not obstructed: [5]"), "{text}");
}

#[test]
fn scan_json_shape_and_out_file() {
    let dir = std::env::temp_dir().join("floercone-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    let out = floercone(&[
        "scan",
        "--family",
        "torus2",
        "--max-q",
        "7",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    let knots = doc["knots"].as_array().unwrap();
    assert_eq!(knots.len(), 3); // q = 3, 5, 7
}

#[test]
fn compute_text_format_mentions_classes() {
    let out = floercone(&["compute", "--knot", "torus:2,5", "--slope", "-2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("class [0]: dim 3"), "{text}");
    assert!(text.contains("class [1]: dim 5"), "{text}");
}

#[test]
fn engine_selection_direct_vs_closed() {
    for engine in ["direct", "closed", "both"] {
        let out = floercone(&[
            "compute",
            "--knot",
            "torus:2,7",
            "--slope",
            "5",
            "--flavor",
            "plus",
            "--engine",
            engine,
            "--format",
            "json",
        ]);
        let doc = stdout_json(&out);
        assert_eq!(doc["classes"]["0"]["tower_bottom"], 0, "engine {engine}");
    }
}
