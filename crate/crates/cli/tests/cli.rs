//! Black-box tests of the binary: verbs, flags, exit codes, and report
//! determinism on fixed inputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CHAIN3: &str = r#"{
  "kind": "cposet",
  "carrier": [0, 1, 2],
  "leq": [[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]],
  "operator": [
    {"x": 0, "set": [0]},
    {"x": 0, "set": [1]}, {"x": 1, "set": [1]},
    {"x": 0, "set": [2]}, {"x": 1, "set": [2]}, {"x": 2, "set": [2]},
    {"x": 0, "set": [0, 1]}, {"x": 1, "set": [0, 1]},
    {"x": 0, "set": [0, 2]}, {"x": 1, "set": [0, 2]}, {"x": 2, "set": [0, 2]},
    {"x": 0, "set": [1, 2]}, {"x": 1, "set": [1, 2]}, {"x": 2, "set": [1, 2]},
    {"x": 0, "set": [0, 1, 2]}, {"x": 1, "set": [0, 1, 2]}, {"x": 2, "set": [0, 1, 2]}
  ]
}"#;

const EMPTY: &str = r#"{"kind": "cposet", "carrier": [], "leq": [], "operator": []}"#;

/// Two points, base {{1}, {0,1}} (a Sierpiński-type space).
const SIERPINSKI: &str = r#"{"kind": "space", "points": [0, 1], "base": [[1], [0, 1]]}"#;

/// Same points, base {{0}, {0,1}}: the set {1} is not open here.
const SIERPINSKI_FLIP: &str = r#"{"kind": "space", "points": [0, 1], "base": [[0], [0, 1]]}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stonework"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_passes_on_the_empty_cposet() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", EMPTY);
    let out = run(&["validate", empty.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("# mode: standard"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn spectrum_of_the_chain_is_a_two_point_space() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["spectrum", chain.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("points: 2"));

    // The JSON form is itself a parseable space document.
    let out = run(&["spectrum", chain.to_str().unwrap(), "--format=json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["kind"], "space");
    assert_eq!(doc["points"].as_array().unwrap().len(), 2);
    assert_eq!(doc["provenance"]["source_carrier"].as_array().unwrap().len(), 3);
}

#[test]
fn spectrum_reports_inc_up_to_maxk() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["spectrum", chain.to_str().unwrap(), "--maxk=7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("Inc up to 7:"));
}

#[test]
fn dual_round_trips_through_both_directions() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["dual", chain.to_str().unwrap(), "--format=json"]);
    assert_eq!(out.status.code(), Some(0));
    let space = write(dir.path(), "spec.json", &stdout_of(&out));

    let out = run(&["dual", space.to_str().unwrap(), "--format=json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["kind"], "cposet");
    assert_eq!(doc["carrier"].as_array().unwrap().len(), 3);
}

#[test]
fn roundtrip_pt_passes_with_a_xi_table() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["roundtrip", "--side=PT", chain.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("xi: 0 -> 0, 1 -> 1, 2 -> 2"));
    assert!(text.contains("result: PASS"));
}

/// Sierpiński base completed with ∅, as the ∅-membership biconditional
/// demands of a sober space with a down-directed base.
const SIERPINSKI_CONFORMANT: &str =
    r#"{"kind": "space", "points": [0, 1], "base": [[], [1], [0, 1]]}"#;

#[test]
fn roundtrip_tp_passes_on_a_conformant_space() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "s.json", SIERPINSKI_CONFORMANT);
    let out = run(&["roundtrip", "--side=TP", space.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("f_X:"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn primes_lists_the_two_chain_primes() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["primes", chain.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("prime: {0}"));
    assert!(text.contains("prime: {0, 1}"));
    assert!(text.contains("count: 2"));
}

#[test]
fn classify_echoes_the_mode_in_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "s.json", SIERPINSKI);
    let out = run(&[
        "classify",
        space.to_str().unwrap(),
        "--mode=strict-literal",
    ]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("# mode: strict-literal"));
    assert!(text.contains("cells:"));
}

#[test]
fn check_strict_accepts_identity_and_rejects_a_collapsing_map() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let chain_s = chain.to_str().unwrap();
    let id = write(
        dir.path(),
        "id.json",
        r#"{"kind": "map", "pairs": [[0, 0], [1, 1], [2, 2]]}"#,
    );
    let out = run(&["check-strict", id.to_str().unwrap(), chain_s, chain_s]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));

    // 2 ↦ 1 pulls the prime {0, 1} back to the whole carrier, which is
    // not a proper ideal.
    let collapse = write(
        dir.path(),
        "collapse.json",
        r#"{"kind": "map", "pairs": [[0, 0], [1, 0], [2, 1]]}"#,
    );
    let out = run(&["check-strict", collapse.to_str().unwrap(), chain_s, chain_s]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("FAIL"));
}

#[test]
fn check_spectral_accepts_identity_and_rejects_a_non_open_preimage() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", SIERPINSKI);
    let b = write(dir.path(), "b.json", SIERPINSKI_FLIP);
    let id = write(
        dir.path(),
        "id.json",
        r#"{"kind": "map", "pairs": [[0, 0], [1, 1]]}"#,
    );
    let out = run(&[
        "check-spectral",
        id.to_str().unwrap(),
        a.to_str().unwrap(),
        a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));

    // From the flipped space, the preimage of {1} is {1}, not open there.
    let out = run(&[
        "check-spectral",
        id.to_str().unwrap(),
        b.to_str().unwrap(),
        a.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("FAIL"));
}

#[test]
fn witness_reports_found_and_absent_tables() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "s.json", SIERPINSKI);
    let out = run(&["witness", space.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("meet witness: found"));
    assert!(text.contains("join witness: found"));

    // Two disjoint nonempty base sets: the intersection ∅ is not in the
    // base, so the meet witness is absent.
    let discrete = write(
        dir.path(),
        "d.json",
        r#"{"kind": "space", "points": [0, 1], "base": [[0], [1]]}"#,
    );
    let out = run(&["witness", discrete.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("meet witness: absent at base pair (0, 1)"));
}

#[test]
fn export_emits_both_dot_graphs_for_a_space() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "s.json", SIERPINSKI);
    let out = run(&["export", space.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("digraph specialization"));
    assert!(text.contains("digraph base_inclusion"));

    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = run(&["export", chain.to_str().unwrap()]);
    assert!(stdout_of(&out).contains("digraph order"));
}

#[test]
fn parse_errors_exit_2_with_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"kind\": \"cposet\",\n  \"carrier\": [0,");
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");

    let widget = write(dir.path(), "widget.json", r#"{"kind": "widget"}"#);
    let out = run(&["validate", widget.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong kind for the verb is an input error, not a check failure.
    let space = write(dir.path(), "s.json", SIERPINSKI);
    let out = run(&["spectrum", space.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn semantic_failures_exit_1_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    // Three incomparable atoms under a common top and bottom: the M3
    // shape, whose ideal lattice is not distributive.
    let m3 = write(
        dir.path(),
        "m3.json",
        r#"{
          "kind": "cposet",
          "carrier": [0, 1, 2, 3, 4],
          "leq": [[0,0],[1,1],[2,2],[3,3],[4,4],[0,1],[0,2],[0,3],[0,4],[1,4],[2,4],[3,4]],
          "operator": [
            {"x": 0, "set": [0]},
            {"x": 0, "set": [1]}, {"x": 1, "set": [1]},
            {"x": 0, "set": [2]}, {"x": 2, "set": [2]},
            {"x": 0, "set": [3]}, {"x": 3, "set": [3]},
            {"x": 0, "set": [4]}, {"x": 1, "set": [4]}, {"x": 2, "set": [4]},
            {"x": 3, "set": [4]}, {"x": 4, "set": [4]},
            {"x": 0, "set": [1, 2]}, {"x": 1, "set": [1, 2]}, {"x": 2, "set": [1, 2]},
            {"x": 3, "set": [1, 2]}, {"x": 4, "set": [1, 2]},
            {"x": 0, "set": [1, 3]}, {"x": 1, "set": [1, 3]}, {"x": 2, "set": [1, 3]},
            {"x": 3, "set": [1, 3]}, {"x": 4, "set": [1, 3]},
            {"x": 0, "set": [2, 3]}, {"x": 1, "set": [2, 3]}, {"x": 2, "set": [2, 3]},
            {"x": 3, "set": [2, 3]}, {"x": 4, "set": [2, 3]}
          ]
        }"#,
    );
    let out = run(&["spectrum", m3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not distributive"), "{err}");

    // The same file still validates as a (non-distributive) c-poset.
    let out = run(&["validate", m3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("distributive: false"));
}

#[test]
fn size_limit_env_var_overrides_the_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let out = Command::new(env!("CARGO_BIN_EXE_stonework"))
        .args(["primes", chain.to_str().unwrap()])
        .env("WORKBENCH_SIZE_LIMIT", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("ceiling 2"), "{err}");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain3.json", CHAIN3);
    let target = dir.path().join("report.json");
    let out = run(&[
        "primes",
        chain.to_str().unwrap(),
        "--format=json",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(report["verb"], "primes");
    assert_eq!(report["count"], 2);
    assert_eq!(report["primes"], serde_json::json!([[0], [0, 1]]));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "s.json", SIERPINSKI);
    let args = ["classify", space.to_str().unwrap(), "--format=json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
