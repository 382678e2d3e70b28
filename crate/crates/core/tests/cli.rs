use std::io::Write;
use std::process::{Command, Stdio};

use walk_entropy::cli::{run_from_args, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE};
use walk_entropy::{construct_hm, parse_edge_list};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["walk-entropy"];
    argv.extend_from_slice(args);
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from_args(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn gen_hm_emits_h4_edge_list() {
    let (code, out, _) = run(&["gen-hm", "4"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("n 24\n"));
    assert_eq!(parse_edge_list(&out).unwrap(), construct_hm(4).unwrap());
}

#[test]
fn check_walk_regular_from_stdin() {
    let (code, out, _) = run(&["check-walk-regular", "-"], K4);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("walk-regular: true\n"));

    let (code, out, _) = run(&["check-walk-regular", "--hm", "4", "--format", "json"], "");
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_walk_regular"], false);
    assert_eq!(v["witness"]["length"], 2);
    assert_eq!(v["witness"]["first_count"], "5");
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_counterexample_h4() {
    let (code, out, _) = run(&["verify-counterexample", "--hm", "4"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("counterexample: true\n"));
    assert!(out.contains("degree-regular: false"));

    let (code, out, _) = run(&["verify-counterexample", "--hm", "4", "--format", "json"], "");
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counterexample"], true);
    let roots: Vec<f64> = v["crossings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["beta_star"].as_f64().unwrap())
        .collect();
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - 0.499).abs() < 5e-3 && (roots[1] - 1.912).abs() < 5e-3);
    for field in ["beta_star", "bracket_lo", "bracket_hi", "spread", "classes"] {
        assert!(v["crossings"][0].get(field).is_some(), "missing {field}");
    }
}

#[test]
fn scan_csv_layout() {
    let (code, out, _) = run(
        &["scan", "--hm", "4", "--beta-min", "0", "--beta-max", "1", "--step", "0.5"],
        "",
    );
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "beta,entropy,max_entropy,deficit,spread,f_0,f_4");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,3.17805383035,3.17805383035,"));
    let last: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(last[0], "1");
    assert!((last[5].parse::<f64>().unwrap() - 6.481).abs() < 5e-3);
    assert!((last[6].parse::<f64>().unwrap() - 7.175).abs() < 5e-3);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["scan", "--hm", "3", "--beta-max", "2", "--step", "0.1"],
        vec!["find-crossings", "--hm", "4", "--format", "json"],
        vec!["verify-counterexample", "--hm", "4", "--format", "json"],
    ] {
        let first = run(&args, "");
        let second = run(&args, "");
        assert_eq!(first, second);
    }
}

#[test]
fn find_crossings_formats() {
    let (code, out, _) = run(&["find-crossings", "-"], K4);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("maximal at every beta"));

    let (code, out, _) = run(&["find-crossings", "--hm", "4", "--format", "csv"], "");
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "beta_star,bracket_lo,bracket_hi,spread,f_0,f_4");
    assert_eq!(lines.len(), 3);
}

#[test]
fn entropy_command() {
    let (code, out, _) = run(&["entropy", "--hm", "4", "--beta", "1"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("maximal: false"));
    let (code, out, _) = run(&["entropy", "-", "--beta", "2", "--format", "json"], K4);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_maximal"], true);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["entropy", "--hm", "4"], "").0, EXIT_USAGE); // missing --beta
    assert_eq!(run(&["entropy", "--hm", "4", "--beta=-1"], "").0, EXIT_USAGE);
    assert_eq!(run(&["scan", "--hm", "4", "--step", "0"], "").0, EXIT_USAGE);
    assert_eq!(run(&["check-walk-regular"], "").0, EXIT_USAGE);
    assert_eq!(run(&["check-walk-regular", "-", "--hm", "3"], K4).0, EXIT_USAGE);
    assert_eq!(run(&["gen-hm", "0"], "").0, EXIT_USAGE);
    assert_eq!(run(&["bogus"], "").0, EXIT_USAGE);
    assert_eq!(run(&["check-walk-regular", "--hm", "3", "--format", "csv"], "").0, EXIT_USAGE);

    let (code, _, err) = run(&["check-walk-regular", "-"], "0 1\n1 1\n");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2") && err.contains("self-loop"), "{err}");

    let (code, _, err) = run(&["check-walk-regular", "/nonexistent/graph.txt"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read"));
}

#[test]
fn overflow_exits_two() {
    let (code, _, err) = run(&["entropy", "--hm", "4", "--beta", "500"], "");
    assert_eq!(code, EXIT_COMPUTE);
    assert!(err.contains("overflow"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify-counterexample"));
}

#[test]
fn binary_round_trip_through_pipes() {
    let exe = env!("CARGO_BIN_EXE_walk-entropy");
    let generated = Command::new(exe).args(["gen-hm", "4"]).output().unwrap();
    assert!(generated.status.success());

    let mut child = Command::new(exe)
        .args(["check-walk-regular", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&generated.stdout).unwrap();
    let result = child.wait_with_output().unwrap();
    assert_eq!(result.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&result.stdout).starts_with("walk-regular: false"));

    let bad = Command::new(exe).args(["entropy", "--hm", "4", "--beta", "500"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
