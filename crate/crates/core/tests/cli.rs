use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mixhelly"))
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixhelly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } = bin().args(args).output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

const GAP: &str = "space: Z\n# 1/2 <= x <= 1/2\n1 -1/2\n-1 1/2\n";

#[test]
fn feasible_reports_witness() {
    let f = write("box.txt", "space: R x Z\n1 0 0\n-1 0 3\n0 1 -1/2\n0 -1 2\n");
    let (code, out, _) = run(&["feasible", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("FEASIBLE witness=("), "{out}");
}

#[test]
fn infeasible_carries_a_checked_record() {
    let f = write("gap.txt", GAP);
    let (code, out, _) = run(&["feasible", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("INFEASIBLE"));
    assert!(out.contains("re-verified ok"), "{out}");
}

#[test]
fn certify_both_agrees() {
    let f = write("gap2.txt", GAP);
    let (code, out, _) = run(&["certify", f.to_str().unwrap(), "--method", "both"]);
    assert_eq!(code, 0);
    assert!(out.contains("COMPARE search=2 constructive=2 budget=2 both_verified=true"), "{out}");
}

#[test]
fn malformed_input_exits_2_with_line() {
    let f = write("bad.txt", "space: Z\n1 1//2\n");
    let (code, _, err) = run(&["feasible", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn node_cap_exits_4() {
    let f = write("cap.txt", "space: R x Z\n1 1 -1/2\n-1 -1 1/2\n0 2 -1\n0 -2 1\n");
    let (code, _, err) = run(&["feasible", f.to_str().unwrap(), "--node-cap", "1", "--require-bounds"]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn empty_support_region_exits_3() {
    let f = write("gap3.txt", GAP);
    let (code, _, _) = run(&["support", f.to_str().unwrap(), "--objective", "1 0"]);
    assert_eq!(code, 3);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn lab_helly_square_window() {
    let (code, out, _) = run(&["lab", "helly", "--space", "Z^2", "--window", "0:2,0:2"]);
    assert_eq!(code, 0);
    assert!(out.contains("h_lower=4"));
    assert!(out.contains("no_independent_set_of_size=5"));
}

#[test]
fn lab_fig1_transcript() {
    let (code, out, _) = run(&["lab", "witness", "fig1"]);
    assert_eq!(code, 0);
    assert!(out.contains("5-wise: empty"));
    assert!(out.trim_end().ends_with("VERIFIED ok"));
}

#[test]
fn generated_systems_round_trip_through_feasible() {
    let (code, out, _) = run(&["gen", "infeasible", "--seed", "3", "--n", "1", "--d", "1"]);
    assert_eq!(code, 0);
    let f = write("gen.txt", &out);
    let (code, out, _) = run(&["certify", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("CERT infeasible"), "{out}");
}
