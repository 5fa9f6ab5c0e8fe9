//! End-to-end tests of the command-line binary: exit codes, the JSON
//! schema, and the text rendering.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tamegamma::report::Report;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamegamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(args: &[&str], name: &str) -> Output {
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.push(fixture(name).to_string_lossy().into_owned());
    Command::new(env!("CARGO_BIN_EXE_tamegamma"))
        .args(&full)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

const TOP_LEVEL_KEYS: [&str; 10] = [
    "input",
    "command",
    "polyhedron",
    "nondegeneracy",
    "tameness",
    "admissibility",
    "stratification",
    "probe",
    "verdict",
    "meta",
];

#[test]
fn every_command_emits_the_full_schema() {
    let cases: [(&[&str], &str); 5] = [
        (&["analyze", "--json"], "tame_r_half.poly"),
        (&["check-family", "--json"], "family_curves.poly"),
        (&["stratify", "--json"], "family_curves.poly"),
        (&["probe", "--json", "--grid", "8"], "whitney_fail.poly"),
        (&["transform", "--power", "2", "--json"], "tame_r_half.poly"),
    ];
    for (args, name) in cases {
        let output = run_fixture(args, name);
        assert!(output.status.success(), "{args:?} on {name} succeeds");
        let text = stdout(&output);
        let value: serde_json::Value = serde_json::from_str(&text).expect("stdout is JSON");
        let map = value.as_object().expect("top level is an object");
        let keys: std::collections::BTreeSet<&str> = map.keys().map(String::as_str).collect();
        let expected: std::collections::BTreeSet<&str> = TOP_LEVEL_KEYS.into_iter().collect();
        assert_eq!(keys, expected, "stable key set for {args:?}");
        // The emitter writes top-level keys in declaration order.
        let positions: Vec<usize> = TOP_LEVEL_KEYS
            .iter()
            .map(|k| text.find(&format!("\n  \"{k}\":")).expect("key present"))
            .collect();
        assert!(
            positions.windows(2).all(|w| w[0] < w[1]),
            "stable key order for {args:?}"
        );
    }
}

#[test]
fn json_reports_round_trip_through_the_library() {
    for (args, name) in [
        (vec!["analyze", "--json"], "not_tame.poly"),
        (vec!["check-family", "--json"], "boundary_jump.poly"),
        (vec!["probe", "--json", "--grid", "6"], "family_curves.poly"),
    ] {
        let output = run_fixture(&args.iter().map(|s| *s).collect::<Vec<_>>(), name);
        assert!(output.status.success());
        let text = stdout(&output);
        let report = Report::from_json(&text).expect("library parses its own output");
        let round = report.to_json();
        if round != text {
            let diverged = round
                .lines()
                .zip(text.lines())
                .find(|(a, b)| a != b)
                .map(|(a, b)| format!("got `{a}`, want `{b}`"))
                .unwrap_or_else(|| "lengths differ".to_string());
            panic!("round-trip mismatch for {name}: {diverged}");
        }
    }
}

#[test]
fn analyze_prints_the_obstruction_and_the_verdict() {
    let output = run_fixture(&["analyze"], "not_tame.poly");
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("verdict: not-regular"), "verdict comes first");
    assert!(text.contains("u2^3 - u1^2"), "the obstruction basis is rendered");
    assert!(text.contains("not-locally-tame"));
}

#[test]
fn lex_order_renders_the_same_ideal_in_the_other_order() {
    let grevlex = stdout(&run_fixture(&["analyze"], "not_tame.poly"));
    let lex = stdout(&run_fixture(&["analyze", "--order", "lex"], "not_tame.poly"));
    assert!(grevlex.contains("u2^3 - u1^2"));
    assert!(lex.contains("u1^2 - u2^3"), "lex puts u1^2 in front");
}

#[test]
fn reading_from_stdin_matches_reading_from_a_file() {
    let text = std::fs::read_to_string(fixture("tame_r_half.poly")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_tamegamma"))
        .args(["analyze", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let piped = child.wait_with_output().unwrap();
    assert!(piped.status.success());
    let from_file = run_fixture(&["analyze", "--json"], "tame_r_half.poly");
    assert_eq!(piped.stdout, from_file.stdout);
}

#[test]
fn parse_errors_exit_with_code_2() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tamegamma"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"z1^2 + + z2")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("parse error"));
}

#[test]
fn missing_files_exit_with_code_2() {
    let output = run(&["analyze", "/nonexistent/input.poly"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn the_wrong_command_for_the_input_exits_with_code_3() {
    let family_to_analyze = run_fixture(&["analyze"], "family_curves.poly");
    assert_eq!(family_to_analyze.status.code(), Some(3));
    assert!(stderr(&family_to_analyze).contains("use check-family"));

    let single_to_check = run_fixture(&["check-family"], "tame_r_half.poly");
    assert_eq!(single_to_check.status.code(), Some(3));
    assert!(stderr(&single_to_check).contains("use analyze"));
}

#[test]
fn jumping_boundaries_cannot_be_stratified() {
    let output = run_fixture(&["stratify"], "boundary_jump.poly");
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("precondition"));
}

#[test]
fn an_exhausted_budget_exits_with_code_4_and_a_partial_report() {
    let output = run_fixture(&["analyze", "--json", "--budget-steps", "0"], "tame_r_half.poly");
    assert_eq!(output.status.code(), Some(4));
    let value: serde_json::Value =
        serde_json::from_str(&stdout(&output)).expect("a partial report is still printed");
    assert_eq!(value["verdict"], "unknown");
    assert_eq!(value["meta"]["exhausted"], true);
}

#[test]
fn transform_rejects_contradictory_flags() {
    let both = run_fixture(
        &["transform", "--power", "2", "--convenient", "5,5"],
        "tame_r_half.poly",
    );
    assert_eq!(both.status.code(), Some(2));
    assert!(stderr(&both).contains("exactly one"));

    let neither = run_fixture(&["transform"], "tame_r_half.poly");
    assert_eq!(neither.status.code(), Some(2));
}

#[test]
fn transform_convenient_adds_the_pure_powers() {
    let output = run_fixture(&["transform", "--convenient", "7,7", "--json"], "tame_r_half.poly");
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let rendered = value["input"]["text"].as_str().unwrap();
    assert!(rendered.contains("z1^7"), "got {rendered}");
    assert!(rendered.contains("z2^7"), "got {rendered}");
    assert_eq!(value["polyhedron"]["classification"]["vanishing"], serde_json::json!(["{}"]));
}

#[test]
fn probe_honours_seed_and_grid_flags() {
    let a = run_fixture(&["probe", "--json", "--grid", "6", "--seed", "7"], "whitney_fail.poly");
    let b = run_fixture(&["probe", "--json", "--grid", "6", "--seed", "7"], "whitney_fail.poly");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed, same bytes");
    let value: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(value["probe"]["seed"], 7);
    assert_eq!(value["probe"]["grid"]["to"], 6);
    assert_eq!(value["meta"]["seed"], 7);
    let c = run_fixture(&["probe", "--json", "--grid", "6", "--seed", "8"], "whitney_fail.poly");
    assert_ne!(a.stdout, c.stdout, "a different seed changes the sampled arcs");
}
