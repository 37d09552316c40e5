//! End-to-end checks of the installed binary: exit codes, file output,
//! the JSON side channel, and environment-variable overrides.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gsp4-nearby"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary must launch")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = run(&["verify", "--p", "3", "--r", "1", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("verdict pass"));
    assert!(text.contains("71"));
    assert!(!text.contains("elapsed"));
}

#[test]
fn even_p_is_a_usage_error_with_exit_two() {
    let out = run(&["verify", "--p", "4", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("p must be an odd prime"));
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["verify", "--help"][..]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
        assert!(!stdout_of(&out).is_empty());
    }
}

#[test]
fn json_side_channel_matches_stdout_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let path_str = path.to_str().unwrap();

    let side = run(&["verify", "--p", "3", "--r", "1", "--json", path_str]);
    assert_eq!(side.status.code(), Some(0));
    let from_file = std::fs::read_to_string(&path).unwrap();

    let direct = run(&["verify", "--p", "3", "--r", "1", "--format", "json"]);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(from_file, stdout_of(&direct));

    let parsed: serde_json::Value = serde_json::from_str(&from_file).unwrap();
    assert_eq!(parsed["verdict"], "pass");
    assert_eq!(parsed["params"]["p"], 3);
    assert!(parsed.get("witness").is_none());
    assert!(parsed.get("elapsed").is_none(), "timing must never reach the JSON");
}

#[test]
fn verify_json_is_identical_across_worker_counts() {
    let one = run(&["verify", "--p", "3", "--r", "2", "--format", "json", "--workers", "1"]);
    let four = run(&["verify", "--p", "3", "--r", "2", "--format", "json", "--workers", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(out_bytes(&one), out_bytes(&four), "reports must be byte-identical");
}

fn out_bytes(out: &Output) -> &[u8] {
    &out.stdout
}

#[test]
fn limit_env_is_honored_and_flag_wins() {
    // 243 tuples are needed at q = 3; an environment limit of 10 must
    // refuse the sweep with exit 2.
    let out = bin()
        .args(["strata", "--p", "3"])
        .env("GSP4_NEARBY_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("243"));

    // An explicit flag beats the environment.
    let out = bin()
        .args(["strata", "--p", "3", "--limit", "1000"])
        .env("GSP4_NEARBY_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    // --force ignores both.
    let out = bin()
        .args(["strata", "--p", "3", "--force"])
        .env("GSP4_NEARBY_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let out = run(&["strata", "--p", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty(), "file output must not also hit stdout");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 14);
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 389);
}

#[test]
fn trace_subcommand_reports_the_known_fiber() {
    // Unit ratio: a/b = 1 has norm one, so the cover contributes.
    let out = run(&["trace", "--p", "3", "--point", "0,0,1,1,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["trace"], -4);
    assert_eq!(parsed["stratum"], "s02tau");

    // Non-square ratio: a/b = 2 has norm two, and the fiber is empty.
    let out = run(&["trace", "--p", "3", "--point", "0,0,1,2,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["trace"], 0);
    assert_eq!(parsed["stratum"], "s02tau");

    let off_fiber = run(&["trace", "--p", "3", "--point", "1,1,0,0,0"]);
    assert_eq!(off_fiber.status.code(), Some(2));
}

#[test]
fn phi_subcommand_evaluates_the_test_function() {
    let out = run(&["phi", "--p", "3", "--s", "1,1,1,1", "--w", "tau", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["phi"], -20);

    let bad_label = run(&["phi", "--p", "3", "--s", "1,1,1,1", "--w", "nonsense"]);
    assert_eq!(bad_label.status.code(), Some(2));
}

#[test]
fn adm_lists_thirteen_rows() {
    let out = run(&["adm", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).lines().count(), 14);
}

#[test]
fn atlas_validation_passes_at_q3() {
    let out = run(&["atlas", "--p", "3", "--validate", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let charts = parsed.as_array().expect("a chart array");
    assert!(!charts.is_empty());
    for chart in charts {
        assert_eq!(chart["validation"]["pass"], true, "chart {}", chart["name"]);
    }
}

#[test]
fn drinfeld_sweep_passes_in_budget_and_refuses_outside() {
    let out = run(&["drinfeld", "--p", "3", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["points"], 19);
    assert_eq!(parsed["verdict"], "pass");

    let out = run(&["drinfeld", "--p", "5", "--r", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_output_directory_is_an_io_usage_error() {
    let missing = Path::new("/nonexistent-dir-for-sure/report.txt");
    let out = run(&["adm", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("cannot write"));
}
