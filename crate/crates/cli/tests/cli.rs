//! The `primebound` binary: published examples, exit codes and JSON schemas.

use std::process::{Command, Output};

use primebound::grid_verifier::{GridReport, Manifest};
use primebound::range_verifier::{MiRow, VerificationReport};
use primebound::selftest::SelftestReport;
use serde::de::DeserializeOwned;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primebound"))
        .args(args)
        .env_remove("PRIMEBOUND_OUTPUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Parses `--output json` and checks that it serializes back to the same value.
fn round_trip<T: DeserializeOwned + serde::Serialize>(o: &Output) -> T {
    let text = stdout(o);
    let v: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let a: serde_json::Value = serde_json::from_str(&text).unwrap();
    let b = serde_json::to_value(&v).unwrap();
    assert_eq!(a, b);
    v
}

#[test]
fn nth_six_is_thirteen() {
    let o = run(&["nth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "13");
}

#[test]
fn corollary_threshold_is_3468() {
    let o = run(&["bound", "threshold", "corollary-unconditional-1.12", "1000000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3468");
}

#[test]
fn g1_grid_certifies() {
    let o = run(&["--output", "json", "grid", "run", "paper:g1"]);
    assert_eq!(o.status.code(), Some(0));
    let r: GridReport = round_trip(&o);
    assert_eq!((r.cells, r.cells_checked, r.failure_count), (700_000, 700_000, 0));
}

#[test]
fn unknown_subcommand_prints_usage_and_exits_3() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["bound", "eval", "no-such-bound", "10"]).status.code(), Some(3));
    assert_eq!(run(&["--workers", "0", "nth", "3"]).status.code(), Some(3));
    assert_eq!(run(&["--chunk-size", "999", "nth", "3"]).status.code(), Some(3));
    assert_eq!(run(&["--ceiling", "1e6", "nth", "1e6"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn violations_exit_1_and_report_round_trips() {
    let o = run(&["--output", "json", "bound", "check", "eq-1.4-upper", "2..1000"]);
    assert_eq!(o.status.code(), Some(1));
    let r: VerificationReport = round_trip(&o);
    assert_eq!(r.last_violation, Some(5));
    assert_eq!(r.count_checked, 999);

    let o = run(&["--output", "csv", "bound", "check", "eq-1.4-upper", "2..1000"]);
    assert_eq!(stdout(&o).lines().count(), 2 + 4);
    let o = run(&["bound", "check", "eq-1.4-upper", "6..1e4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations 0"));
}

#[test]
fn theta_bounds_carry_the_envelope() {
    let o = run(&["--output", "json", "bound", "check", "theta-upper-10.367", "2..3000"]);
    assert_eq!(o.status.code(), Some(1));
    let r: VerificationReport = round_trip(&o);
    assert_eq!(r.last_violation, Some(2580));
    assert!(r.envelope.is_some());
}

#[test]
fn unresolved_cells_exit_2_and_counterexamples_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coarse.json");
    let json = Manifest::paper().to_json().replace("\"step\": \"0.001\"", "\"step\": \"0.7\"").replace("\"cells\": 2800", "\"cells\": 4");
    let m = Manifest::from_json(&json).unwrap();
    let coarse = Manifest { version: m.version, grids: m.grids.into_iter().filter(|g| g.id == "paper:r").collect() };
    std::fs::write(&path, coarse.to_json()).unwrap();
    let o = run(&["--output", "json", "grid", "run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let reps: Vec<GridReport> = round_trip(&o);
    assert!(reps[0].failures.iter().all(|f| !f.counterexample));

    let o = run(&["grid", "tail", "f5", "1", "3", "--step", "0.05"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
    let o = run(&["grid", "tail", "f2", "3.05", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bounded-tail numeric check"));
}

#[test]
fn manifest_output_is_accepted_back() {
    let o = run(&["--output", "json", "grid", "manifest"]);
    let m: Manifest = round_trip(&o);
    assert_eq!(m, Manifest::paper());
}

#[test]
fn mi_table_reproduces_m6() {
    let o = run(&["--output", "json", "report", "mi-table", "--horizon", "1e5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<MiRow> = round_trip(&o);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[5].derived_m, Some(5));
    assert_eq!(rows[5].b, "0.105");
    assert!(rows.iter().filter(|r| r.i != 6).all(|r| r.derived_m.is_none()));
}

#[test]
fn selftest_passes() {
    let o = run(&["--output", "json", "selftest"]);
    let r: SelftestReport = round_trip(&o);
    assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(0));
    assert!(r.wall_time_s < 300.0);
}

#[test]
fn human_reals_have_fifteen_digits_and_a_width() {
    let o = run(&["bound", "eval", "eq-1.6-upper", "4"]);
    let s = stdout(&o);
    assert!(s.contains("8.1582515243058"), "{s}");
    assert!(s.contains("[width "));
    let o = run(&["theta", "25"]);
    assert!(stdout(&o).contains("p_25 = 97"));
    let o = run(&["formula", "eval", "b1", "1000000", "--step", "lower1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["formula", "eval", "b1", "1000000"]).status.code(), Some(3));
}

#[test]
fn environment_overrides_flags_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_primebound"))
        .args(["pi", "1000"])
        .env("PRIMEBOUND_OUTPUT", "json")
        .env("PRIMEBOUND_CEILING", "1e4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pi"], 168);
}

#[test]
fn checkpoint_files_are_written_and_resumed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--output", "json", "--checkpoint-dir", d, "--chunk-size", "1000", "bound", "check", "thm-1.2-lower", "2..50000"];
    let first: VerificationReport = round_trip(&run(&args));
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().any(|n| n.ends_with(".partial.json")), "{names:?}");
    let mut resumed = args.to_vec();
    resumed.insert(0, "--resume");
    let second: VerificationReport = round_trip(&run(&resumed));
    assert_eq!(first.without_timing(), second.without_timing());
}
