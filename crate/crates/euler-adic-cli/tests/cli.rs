//! End-to-end runs of the binary: output shapes, determinism under a fixed
//! seed, and the exit-code contract (0 ok, 1 usage, 2 check failure).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler-adic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn eulerian_table_contains_row_five() {
    let out = run(&["eulerian", "--max-n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 57, 302, 302, 57, 1]"));
    assert!(text.contains("ok"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn eulerian_csv_and_json() {
    let out = run(&["eulerian", "--max-n", "3", "--format", "csv"]);
    assert!(stdout(&out).lines().any(|l| l == "3,1,11"));

    let out = run(&["eulerian", "--max-n", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["rows"][3][2], "11");
}

#[test]
fn codec_commands_invert_each_other() {
    let out = run(&["perm2path", "2341"]);
    assert_eq!(stdout(&out).trim(), "L1,R1,R1");
    let out = run(&["path2perm", "L1,R1,R1"]);
    assert_eq!(stdout(&out).trim(), "2341");
    let out = run(&["path2perm", ""]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn dim_flags_the_literal_variant_mismatch() {
    let out = run(&[
        "dim", "--cylinder", "L1", "--n", "2", "--k", "1", "--variant", "both", "--oracle",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("formula(slot-corrected) = 2"));
    assert!(text.contains("formula(paper-literal) = 3"));
    assert!(text.contains("MISMATCH"));
}

#[test]
fn dim_agrees_on_the_example_cylinder() {
    let out = run(&[
        "dim", "--cylinder", "L1,R2", "--n", "8", "--k", "4", "--oracle", "both", "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["pattern"], "213");
    assert_eq!(value["formula(slot-corrected)"], "26440");
    assert_eq!(value["oracle(permutations)"], "26440");
    assert_eq!(value["mismatch"], false);
}

#[test]
fn ratio_of_identical_cylinders_is_one() {
    let out = run(&[
        "ratio",
        "--cylinder-a",
        "L1,R2",
        "--cylinder-b",
        "L1,R2",
        "--diagonal",
        "6,12",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[4], "1");
        assert_eq!(fields[5], "1");
    }
}

#[test]
fn ratio_with_equal_terminal_columns_is_exactly_one() {
    // 213 and 132 end at the same vertex, so every ratio is exactly 1.
    let out = run(&[
        "ratio",
        "--cylinder-a",
        "L1,R2",
        "--cylinder-b",
        "R1,L2",
        "--diagonal",
        "10,20,40",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!((fields[4], fields[5]), ("1", "1"), "line {line}");
    }
}

#[test]
fn ratio_deviations_shrink_for_distinct_columns() {
    let out = run(&[
        "ratio",
        "--cylinder-a",
        "L1,R2",
        "--cylinder-b",
        "L1,L1",
        "--diagonal",
        "10,20,40",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows[0]["dim_a"], "2643360");
    assert_eq!(rows[0]["dim_b"], "2575404");
}

#[test]
fn explicit_schedules_override_the_diagonal() {
    let out = run(&[
        "ratio",
        "--cylinder-a",
        "L1",
        "--cylinder-b",
        "R1",
        "--schedule",
        "4:2,8:3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,2,"));
    assert!(lines[2].starts_with("8,3,"));
}

#[test]
fn sampling_is_reproducible_per_seed() {
    let args = [
        "sample", "--spec", "symmetric", "--size", "6", "--count", "4", "--seed", "99",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    let c = run(&[
        "sample", "--spec", "symmetric", "--size", "6", "--count", "4", "--seed", "100",
    ]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn chi_square_run_passes_at_one_percent() {
    let out = run(&[
        "sample",
        "--spec",
        "symmetric",
        "--size",
        "4",
        "--count",
        "20000",
        "--seed",
        "20260810",
        "--chi-square",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["status"], "pass");
    assert_eq!(value["counts"].as_array().unwrap().len(), 24);
}

#[test]
fn check_symmetric_passes_and_perturbed_fails() {
    let out = run(&["check", "--spec", "symmetric", "--depth", "6"]);
    assert!(out.status.success());

    let out = run(&[
        "check",
        "--spec",
        "finite-rank",
        "--depth",
        "3",
        "--alphas",
        "1/4,1/5,1/8",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value[0]["check"], "invariance");
    assert_eq!(value[0]["status"], "fail");
    assert_eq!(value[0]["violations"][0]["level"], 2);
    assert_eq!(value[0]["violations"][0]["column"], 1);
}

#[test]
fn walk_csv_has_the_trajectory_schema() {
    let out = run(&[
        "walk", "--mode", "negative", "--steps", "8", "--seed", "5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,choice,k_n");
    assert_eq!(lines.len(), 9);
    assert!(lines[1].starts_with("1,"));

    let again = run(&[
        "walk", "--mode", "negative", "--steps", "8", "--seed", "5", "--format", "csv",
    ]);
    assert_eq!(text, stdout(&again));
}

#[test]
fn usage_errors_exit_with_one() {
    let out = run(&["dim", "--cylinder", "Q1", "--n", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["perm2path", "120"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["ratio", "--cylinder-a", "L1", "--cylinder-b", "R1,R1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
