//! Integration tests for the command-line binary: exit codes, flag
//! handling, stdin specs, and output stability.

use std::io::Write;
use std::process::{Command, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmix"))
}

#[test]
fn passing_scenario_exits_zero_with_json() {
    let output = binary()
        .args(["--scenario", "fig3"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["spec"]["scenario"], "fig3");
    assert_eq!(value["exit_status"], "pass");
    assert_eq!(value["report"]["stages"][1]["label"], "post_cnot");
}

#[test]
fn failing_check_exits_one() {
    // an impossibly tight tolerance turns the audit's tiny numeric gaps into failures
    let output = binary()
        .args([
            "--scenario",
            "audit",
            "--trials",
            "10",
            "--tolerance",
            "1e-300",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["exit_status"], "fail");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["--scenario", "fig9"],
        vec!["--format", "yaml", "--scenario", "fig3"],
        vec![],
        vec!["--spec", "/nonexistent/spec.json"],
    ] {
        let output = binary().args(&args).output().expect("binary runs");
        assert_eq!(output.status.code(), Some(2), "args {args:?}");
        assert!(output.stdout.is_empty(), "args {args:?} wrote to stdout");
        assert!(
            !output.stderr.is_empty(),
            "args {args:?} wrote no diagnostic"
        );
    }
}

#[test]
fn unknown_flags_are_rejected() {
    let output = binary()
        .args(["--scenario", "fig3", "--frobnicate"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn conflicting_selection_flags_are_rejected() {
    let output = binary()
        .args(["--scenario", "fig3", "--run-all"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn spec_documents_load_from_stdin() {
    let mut child = binary()
        .args(["--spec", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(br#"{"scenario": "fig1", "params": {"alpha": [0.6, 0.0], "beta": [0.0, 0.8]}}"#)
        .expect("spec written");
    let output = child.wait_with_output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["spec"]["params"]["alpha"][0], 0.6);
    assert_eq!(value["exit_status"], "pass");
}

#[test]
fn malformed_stdin_spec_exits_two() {
    let mut child = binary()
        .args(["--spec", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(b"{not json")
        .expect("bytes written");
    let output = child.wait_with_output().expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn spec_files_round_trip_through_the_emitted_summary() {
    let dir = std::env::temp_dir().join("qmix-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("wigner.json");
    std::fs::write(
        &path,
        br#"{"scenario": "wigner", "params": {"alpha": 0.6, "beta": 0.8, "outcome": "1"}, "seed": 3}"#,
    )
    .expect("spec written");

    let output = binary()
        .args(["--spec", path.to_str().expect("utf8 path")])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["spec"]["seed"], 3);
    assert_eq!(value["report"]["parameters"]["friend_outcome"], "1");
    // declared-outcome Born weight for β = 0.8 appears as a metric
    let born = value["report"]["metrics"]["born_probability"]
        .as_f64()
        .expect("metric present");
    assert!((born - 0.64).abs() <= 1e-12);
}

#[test]
fn text_format_prints_human_readable_verdicts() {
    let output = binary()
        .args(["--scenario", "ambiguity", "--format", "text"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).expect("utf8");
    assert!(text.contains("scenario: ambiguity"));
    assert!(text.contains("✓"));
    assert!(text.trim_end().ends_with("result: PASS"));
}

#[test]
fn seeded_audit_passes_at_full_trial_count() {
    let run = || {
        binary()
            .args(["--scenario", "audit", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    let output = run();
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["report"]["trials"], 1000);
    let gap = value["report"]["max_abs_gap"]
        .as_f64()
        .expect("gap recorded");
    assert!(gap <= 1e-12);
    // bit-identical reproduction for the same seed
    assert_eq!(output.stdout, run().stdout);
}

#[test]
fn flag_overrides_reach_the_spec() {
    let output = binary()
        .args(["--scenario", "audit", "--trials", "25", "--seed", "9"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(value["spec"]["trials"], 25);
    assert_eq!(value["spec"]["seed"], 9);
    assert_eq!(value["report"]["trials"], 25);
}

#[test]
fn single_scenario_output_is_byte_stable() {
    let run = || {
        binary()
            .args(["--scenario", "audit", "--trials", "50"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}
