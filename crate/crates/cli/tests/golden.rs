//! Every fixture report is frozen: rerunning a command must reproduce the
//! stored bytes exactly, and the exit code is part of the contract.

use std::path::PathBuf;
use std::process::Command;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(command: &str, fixture: &str) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cutcube"))
        .arg(command)
        .arg("--input")
        .arg(fixture_dir().join(fixture))
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

const GOLDEN: &[(&str, &str, i32)] = &[
    ("theta", "validate", 0),
    ("theta", "build", 0),
    ("theta", "tree", 0),
    ("theta", "oracle", 0),
    ("c8_crossing", "validate", 0),
    ("c8_crossing", "build", 0),
    ("c8_crossing", "oracle", 0),
    ("c8_nested", "validate", 0),
    ("c8_nested", "build", 0),
    ("c8_nested", "tree", 0),
    ("c8_nested", "oracle", 0),
    ("c12_nested", "validate", 0),
    ("c12_nested", "build", 0),
    ("c12_nested", "tree", 0),
    ("c12_nested", "oracle", 0),
    ("grid3x7", "validate", 0),
    ("grid3x7", "build", 0),
    ("grid3x7", "tree", 0),
    ("grid3x7", "oracle", 0),
    ("k4_empty", "validate", 0),
    ("k4_empty", "build", 0),
    ("k4_empty", "tree", 0),
    ("k4_empty", "oracle", 0),
    ("p4_path", "validate", 2),
    ("wedge", "validate", 2),
];

#[test]
fn fixture_reports_match_the_frozen_bytes() {
    for &(fixture, command, expected_exit) in GOLDEN {
        let golden_path = fixture_dir().join(format!("golden/{fixture}.{command}.txt"));
        let want = std::fs::read_to_string(&golden_path)
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", golden_path.display()));
        let (stdout, stderr, code) = run(command, &format!("{fixture}.json"));
        assert_eq!(
            code, expected_exit,
            "{fixture} {command}: exit {code}, expected {expected_exit}\nstderr: {stderr}"
        );
        assert_eq!(
            stdout, want,
            "{fixture} {command}: report drifted from the golden file"
        );
    }
}

#[test]
fn malformed_input_exits_one() {
    let (_, stderr, code) = run("validate", "malformed.json");
    assert_eq!(code, 1, "stderr: {stderr}");
    assert!(stderr.starts_with("error: input:"), "stderr: {stderr}");
}

#[test]
fn crossing_cut_sets_make_the_tree_command_refuse() {
    let (stdout, stderr, code) = run("tree", "c8_crossing.json");
    assert_eq!(code, 2, "stdout: {stdout}\nstderr: {stderr}");
    assert!(
        stderr.contains("not mutually non-separating"),
        "stderr: {stderr}"
    );
}

#[test]
fn missing_input_file_exits_one() {
    let (_, stderr, code) = run("build", "no_such_fixture.json");
    assert_eq!(code, 1);
    assert!(stderr.starts_with("error: cannot read"), "stderr: {stderr}");
}

#[test]
fn exported_artifacts_are_valid_json_with_the_reported_shape() {
    let dir = std::env::temp_dir().join(format!("cutcube-artifacts-{}", std::process::id()));
    let run_with_out = |command: &str, fixture: &str, sub: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_cutcube"))
            .arg(command)
            .arg("--input")
            .arg(fixture_dir().join(fixture))
            .arg("--out")
            .arg(dir.join(sub))
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{command} {fixture} failed");
    };
    let parse = |sub: &str, file: &str| -> serde_json::Value {
        let path = dir.join(sub).join(file);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing artifact {}: {e}", path.display()));
        serde_json::from_str(&text)
            .unwrap_or_else(|e| panic!("invalid JSON in {}: {e}", path.display()))
    };

    run_with_out("build", "theta.json", "build");
    let complex = parse("build", "complex.json");
    assert_eq!(complex["walls"].as_array().unwrap().len(), 3);
    assert_eq!(complex["dimension"], 1);
    assert_eq!(complex["group_order"], 6);
    assert_eq!(complex["stabilizers_match"], true);
    let transversality = parse("build", "transversality.json");
    assert_eq!(transversality["wall_count"], 3);
    assert_eq!(transversality["max_transverse_clique"]["size"], 1);

    run_with_out("tree", "theta.json", "tree");
    let certificate = parse("tree", "certificate.json");
    assert_eq!(certificate["skipped"], serde_json::Value::Null);
    assert_eq!(certificate["is_tree"], true);
    // The junction pair is not a connected subgraph, so the sufficient
    // hypotheses fail while the theorem itself still holds.
    assert_eq!(certificate["hypotheses"]["all_hold"], false);
    assert_eq!(certificate["comparison"]["success"], true);
    assert_eq!(
        certificate["comparison"]["vertex_map"]
            .as_array()
            .unwrap()
            .len(),
        certificate["tree"]["vertices"].as_u64().unwrap() as usize
    );

    std::fs::remove_dir_all(&dir).ok();
}
