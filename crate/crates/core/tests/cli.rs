mod common;

use std::process::{Command, Output};

use common::{fixture, golden};

fn bp_rules(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bp-rules"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture_arg(name: &str) -> String {
    fixture(name).to_str().unwrap().to_owned()
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).unwrap()
}

fn stderr(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).unwrap()
}

#[track_caller]
fn assert_golden(args: &[&str], file: &str, code: i32) {
    let output = bp_rules(args);
    assert_eq!(output.status.code(), Some(code), "{}", stderr(&output));
    assert_eq!(stdout(&output), golden(file), "{args:?}");
}

#[test]
fn extract_goldens() {
    let hotel = fixture_arg("hotel_booking.epml");
    let net = fixture_arg("fig1_cancellation.pnml");
    assert_golden(&["extract", &hotel], "hotel_booking.extract.txt", 0);
    assert_golden(
        &["extract", &hotel, "--output", "json"],
        "hotel_booking.extract.json",
        0,
    );
    assert_golden(&["extract", &net], "fig1_cancellation.extract.txt", 0);
    assert_golden(
        &["extract", &net, "--patterns", "3,4"],
        "fig1_cancellation.patterns_3_4.txt",
        0,
    );
}

#[test]
fn native_fixture_matches_epml() {
    let native = fixture_arg("hotel_booking.json");
    assert_golden(&["extract", &native], "hotel_booking.extract.txt", 0);
    assert_golden(
        &["extract", &native, "--format", "native"],
        "hotel_booking.extract.txt",
        0,
    );
}

#[test]
fn coverage_goldens() {
    let hotel = fixture_arg("hotel_booking.epml");
    assert_golden(&["coverage"], "coverage.txt", 0);
    assert_golden(&["coverage", "--output", "json"], "coverage.json", 0);
    assert_golden(&["coverage", &hotel], "hotel_booking.coverage.txt", 0);
    assert_golden(
        &["coverage", &hotel, "--output", "json"],
        "hotel_booking.coverage.json",
        0,
    );
}

#[test]
fn validate_goldens() {
    assert_golden(
        &["validate", &fixture_arg("hotel_booking.epml")],
        "hotel_booking.validate.txt",
        0,
    );
    assert_golden(
        &["validate", &fixture_arg("adjacent_functions.epml")],
        "adjacent_functions.validate.txt",
        0,
    );
    assert_golden(
        &["validate", &fixture_arg("dangling_edge.json")],
        "dangling_edge.validate.txt",
        1,
    );
}

#[test]
fn pnml_coverage_counts_zero_where_inexpressible() {
    let output = bp_rules(&["coverage", &fixture_arg("fig1_cancellation.pnml")]);
    assert_eq!(output.status.code(), Some(0));
    let rows: Vec<&str> = stdout(&output).lines().collect();
    assert!(
        rows[3].contains("no / 0") && rows[4].contains("no / 0"),
        "{rows:#?}"
    );
}

#[test]
fn invalid_model_exits_1_with_diagnostics_on_stderr() {
    let output = bp_rules(&["extract", &fixture_arg("dangling_edge.json")]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
    assert!(stderr(&output).contains("DANGLING_EDGE"));
}

#[test]
fn unreadable_and_unparsable_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.epml");
    let output = bp_rules(&["validate", missing.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("absent.epml"));

    let garbage = dir.path().join("notes.txt");
    std::fs::write(&garbage, "plain text").unwrap();
    let output = bp_rules(&["extract", garbage.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).contains("UNRECOGNIZED_FORMAT"),
        "{}",
        stderr(&output)
    );

    // A forced format that does not match the document.
    let output = bp_rules(&[
        "extract",
        &fixture_arg("hotel_booking.epml"),
        "--format",
        "native",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).contains("MALFORMED_JSON"),
        "{}",
        stderr(&output)
    );
}

#[test]
fn usage_errors_exit_3() {
    let hotel = fixture_arg("hotel_booking.epml");
    for args in [
        vec![],
        vec!["extract"],
        vec!["extract", &hotel, "--patterns", "5"],
        vec!["extract", &hotel, "--format", "bpmn"],
        vec!["validate", &hotel, "--output", "json"],
    ] {
        let output = bp_rules(&args);
        assert_eq!(output.status.code(), Some(3), "{args:?}");
        assert!(stdout(&output).is_empty(), "{args:?}");
    }
}

#[test]
fn pattern_selection() {
    let hotel = fixture_arg("hotel_booking.epml");
    let output = bp_rules(&["extract", &hotel, "--patterns", "4", "--output", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let rules = value["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 1);
    assert_eq!(
        rules[0]["rendered"],
        "the system must send confirmation email to the client"
    );

    let output = bp_rules(&["extract", &hotel, "--patterns", ""]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "# Hotel booking (EPC): 0 rule(s)\n");
}

#[test]
fn version_and_help() {
    let output = bp_rules(&["--version"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).starts_with("bp-rules "));
    assert!(stdout(&output).contains("rule schema 1, graph schema 1"));
    let output = bp_rules(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    for command in ["extract", "coverage", "validate"] {
        assert!(stdout(&output).contains(command));
    }
}
