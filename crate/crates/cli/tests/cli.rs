use std::process::Command;

use serde_json::Value;
use symop_cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    main_with_args(std::iter::once("symop").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn count_three_dimensions() {
    let v = run_json(&["count", "--n", "3", "--q", "2"]);
    assert_eq!(v["counts"]["N_hat"], 50);
    assert_eq!(v["counts"]["N_tilde"], 27);
    assert_eq!(v["counts"]["S"], serde_json::json!([10, 20, 20]));
    assert_eq!(v["outside_proven_range"], false);
    assert_eq!(v["convention"], symop::CONVENTION);
}

#[test]
fn huge_counts_are_strings() {
    let v = run_json(&["count", "--n", "4", "--q", "2000"]);
    assert!(v["counts"]["N_hat"].is_string());
}

#[test]
fn free_particle_solve() {
    let v = run_json(&["solve", "--n", "1", "--q", "1", "--potential", "0"]);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["bounds"]["saturated"], true);
    let exprs: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b["expr"].as_str().unwrap()).collect();
    assert!(exprs.contains(&"(t)*d1 + (-i*x1)"));
}

#[test]
fn time_independent_quartic() {
    let v = run_json(&["solve", "--n", "1", "--q", "2", "--potential", "x1^4", "--time-independent", "--deg-r", "4"]);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["bounds"]["M"], 0);
}

#[test]
fn oscillator_spectral_verdict() {
    let v = run_json(&["spectral", "--n", "1", "--q", "1", "--potential", "x1^2"]);
    assert_eq!(v["verdict"]["has_time_dependent"], true);
    assert_eq!(v["analysis"]["char_poly"], "s^3 + s");
    let w: Vec<&str> = v["verdict"]["eigen_witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["symmetry"].as_str().unwrap())
        .collect();
    assert!(w.contains(&"exp(i*t)*((1)*d1 + (x1))"));
}

#[test]
fn quartic_spectral_has_no_time_dependence() {
    let v = run_json(&["spectral", "--n", "1", "--q", "1", "--potential", "x1^4"]);
    assert_eq!(v["verdict"]["has_time_dependent"], false);
}

#[test]
fn magnetic_determining_system() {
    let v = run_json(&[
        "determine",
        "--n",
        "2",
        "--q",
        "1",
        "--vector-potential",
        "-1/2*x2",
        "--vector-potential",
        "1/2*x1",
    ]);
    assert_eq!(v["system"]["n"], 2);
    assert!(v["equations"].as_u64().unwrap() > 0);
}

#[test]
fn killing_matches_closed_form() {
    let v = run_json(&["killing", "--n", "3", "--rank", "2", "--order", "1"]);
    assert_eq!(v["dimension"], 20);
    assert_eq!(v["matches"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["spectral", "--n", "1", "--q", "2", "--potential", "x1^2", "--format", "json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn bad_input_exits_one() {
    let (code, out, err) = run(&["solve", "--n", "1", "--q", "1", "--potential", "x1^^"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error: potential at column"));

    let (code, _, err) = run(&["spectral", "--n", "1", "--q", "1", "--potential", "t*x1"]);
    assert_eq!(code, 1);
    assert!(err.contains("time-independent"));

    let (code, _, _) = run(&["solve", "--n", "2", "--q", "1", "--vector-potential", "x1"]);
    assert_eq!(code, 1);

    let (code, _, _) = run(&["count", "--n", "0", "--q", "1"]);
    assert_eq!(code, 1);

    let (code, _, _) = run(&["count", "--q", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn large_dimension_warns() {
    let (code, _, err) = run(&["count", "--n", "5", "--q", "1"]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"));
}

#[test]
fn binary_round_trip() {
    let out = Command::new(env!("CARGO_BIN_EXE_symop"))
        .args(["count", "--n", "2", "--q", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "count");

    let out = Command::new(env!("CARGO_BIN_EXE_symop"))
        .args(["solve", "--n", "1", "--q", "1", "--potential", "x1+"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_mentions_half_potential() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/2*x1^2"));
}
