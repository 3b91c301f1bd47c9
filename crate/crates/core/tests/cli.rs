#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::process::Command;

use toronto_ilhi::cli::run;

const EXE: &str = env!("CARGO_BIN_EXE_toronto-ilhi");

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toronto-ilhi").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Parses sweep CSV into grid value → (method label → value), checking the header and row order.
fn parse_sweep(csv_text: &str) -> BTreeMap<String, BTreeMap<String, f64>> {
    let mut lines = csv_text.lines();
    assert_eq!(lines.next(), Some("sweep_var,method,value"));
    let mut rows = BTreeMap::new();
    let mut previous: Option<(f64, String)> = None;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "{line}");
        let x: f64 = fields[0].parse().unwrap();
        let key = (x, fields[1].to_string());
        if let Some(prev) = &previous {
            assert!(
                prev.0 < key.0 || (prev.0 == key.0 && prev.1 < key.1),
                "row order at {line}"
            );
        }
        previous = Some(key);
        rows.entry(fields[0].to_string())
            .or_insert_with(BTreeMap::new)
            .insert(fields[1].to_string(), fields[2].parse().unwrap());
    }
    rows
}

#[test]
fn eval_closed_form_matches_identity_value() {
    let o = cli(&[
        "eval", "toronto", "--m", "2", "--n", "0.5", "--r", "1", "--B", "1", "--method", "closed",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let fields: Vec<&str> = o.stdout.split_whitespace().collect();
    assert_eq!(fields[0], "closed-form");
    let value: f64 = fields[1].parse().unwrap();
    assert!((value - 0.220_733_087_074_121_24).abs() < 1e-14);
    assert_eq!(o.stdout.lines().count(), 1);
}

#[test]
fn eval_empty_integral_is_zero() {
    let o = cli(&[
        "eval", "toronto", "--m", "2", "--n", "0.5", "--r", "1", "--B", "0",
    ]);
    assert_eq!(o.code, 0);
    let value: f64 = o.stdout.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(value, 0.0);
}

#[test]
fn eval_reports_violated_precondition() {
    let o = cli(&[
        "eval", "ilhi", "--m", "1", "--n", "0.4", "--a", "2", "--z", "1", "--method", "closed",
    ]);
    assert_eq!(o.code, 2);
    assert!(
        o.stderr.contains("closed form requires n + 1/2 ∈ ℕ"),
        "{}",
        o.stderr
    );
    assert!(o.stdout.is_empty());
    assert_eq!(o.stderr.lines().count(), 1);
}

#[test]
fn eval_falls_back_to_oracle() {
    let o = cli(&[
        "eval", "toronto", "--m", "2", "--n", "1.5", "--r", "1", "--B", "1",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("oracle "));
    assert!(o.stdout.contains("error_estimate="));
    assert!(o
        .stderr
        .contains("closed form unavailable, served by oracle"));

    let o = cli(&[
        "eval", "toronto", "--m", "2", "--n", "1.5", "--r", "1", "--B", "1", "--method", "closed",
    ]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("closed form unavailable"));
}

#[test]
fn eval_series_and_options() {
    let o = cli(&[
        "eval",
        "toronto",
        "--m",
        "3",
        "--n",
        "2.4",
        "--r",
        "2",
        "--B",
        "3",
        "--method",
        "series4",
        "--rel-tol",
        "1e-15",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let value: f64 = o.stdout.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((value - 0.593_892_197_441_621_74).abs() < 1e-13);

    let o = cli(&[
        "eval",
        "toronto",
        "--m",
        "2",
        "--n",
        "0.5",
        "--r",
        "2",
        "--B",
        "2",
        "--method",
        "series3",
        "--max-terms",
        "2",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("did not converge"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        cli(&["eval", "toronto", "--m", "2", "--n", "0.5", "--r", "1"]).code,
        2
    );
    assert_eq!(
        cli(&[
            "eval", "toronto", "--m", "2", "--n", "0.5", "--r", "1", "--B", "1", "--method",
            "simpson"
        ])
        .code,
        2
    );
    assert_eq!(
        cli(&["eval", "ilhi", "--m", "1", "--n", "1.5", "--a", "2", "--z", "1"]).code,
        2
    );
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(
        cli(&[
            "eval", "ilhi", "--m", "1", "--n", "0.5", "--a", "2", "--z", "1", "--method", "series3"
        ])
        .code,
        2
    );
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let args = [
        "sweep",
        "ilhi",
        "--m",
        "2",
        "--n",
        "1.5",
        "--a",
        "2",
        "--var",
        "z",
        "--start",
        "0.5",
        "--stop",
        "5",
        "--step",
        "0.25",
        "--method",
        "oracle,closed,upper,lower",
    ];
    let first = Command::new(EXE).args(args).output().unwrap();
    let second = Command::new(EXE).args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let rows = parse_sweep(&String::from_utf8(first.stdout).unwrap());
    assert_eq!(rows.len(), 19);
    for methods in rows.values() {
        let labels: Vec<&String> = methods.keys().collect();
        assert_eq!(labels, ["closed", "lower", "oracle", "upper"]);
    }
}

#[test]
fn sweep_values_use_seventeen_significant_digits() {
    let o = cli(&[
        "sweep", "toronto", "--m", "2", "--n", "0.5", "--r", "1", "--var", "B", "--start", "1",
        "--stop", "2", "--step", "1", "--method", "closed",
    ]);
    assert_eq!(o.code, 0);
    let expected = "sweep_var,method,value\n\
                    1.0000000000000000e0,closed,2.2073308707412126e-1\n";
    assert!(o.stdout.starts_with(expected), "{}", o.stdout);
    assert_eq!(o.stdout.lines().count(), 3);
}

#[test]
fn first_figure_orderings() {
    // m = 1: n = 0.4 and n = 0.6 bracket the closed form at n = 0.5
    let o = cli(&[
        "sweep",
        "toronto",
        "--m",
        "1",
        "--n",
        "0.5",
        "--B",
        "2",
        "--var",
        "r",
        "--start",
        "0.1",
        "--stop",
        "5",
        "--step",
        "0.1",
        "--method",
        "closed@0.5,oracle@0.4,oracle@0.6",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = parse_sweep(&o.stdout);
    assert_eq!(rows.len(), 50);
    for (r, v) in &rows {
        let r: f64 = r.parse().unwrap();
        let (above, middle, below) = (v["oracle@0.4"], v["closed@0.5"], v["oracle@0.6"]);
        if r <= 1.0 {
            assert!(above > middle && middle > below, "r = {r}: {v:?}");
        }
        if r >= 2.5 {
            // past the crossover the function grows with n and the ordering flips
            assert!(above < middle && middle < below, "r = {r}: {v:?}");
        }
    }
}

#[test]
fn second_figure_orderings() {
    let o = cli(&[
        "sweep",
        "toronto",
        "--m",
        "3",
        "--n",
        "2.5",
        "--r",
        "0.5",
        "--var",
        "B",
        "--start",
        "0.25",
        "--stop",
        "4",
        "--step",
        "0.25",
        "--method",
        "lower@2.4,oracle@2.4,upper@2.4,closed,oracle@2.6,upper@2.6",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    for (b, v) in parse_sweep(&o.stdout) {
        assert!(
            v["lower@2.4"] < v["oracle@2.4"] && v["oracle@2.4"] < v["upper@2.4"],
            "B = {b}: {v:?}"
        );
        assert!(v["oracle@2.6"] < v["upper@2.6"], "B = {b}");
        assert_eq!(v["lower@2.4"], v["closed"]);
    }
}

#[test]
fn third_figure_orderings() {
    let o = cli(&[
        "sweep",
        "ilhi",
        "--m",
        "3",
        "--a",
        "2",
        "--n",
        "1.3",
        "--var",
        "z",
        "--start",
        "0.5",
        "--stop",
        "8",
        "--step",
        "0.5",
        "--method",
        "lower,oracle,upper,oracle@1.7,lower@1.7,upper@1.7",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = parse_sweep(&o.stdout);
    assert_eq!(rows.len(), 16);
    for (z, v) in rows {
        assert!(
            v["lower"] < v["oracle"] && v["oracle"] < v["upper"],
            "z = {z}: {v:?}"
        );
        assert!(
            v["lower@1.7"] < v["oracle@1.7"] && v["oracle@1.7"] < v["upper@1.7"],
            "z = {z}"
        );
        assert!(v["oracle@1.7"] < v["oracle"]);
    }
}

#[test]
fn sweep_rejects_empty_range() {
    let o = cli(&[
        "sweep", "toronto", "--m", "1", "--n", "0.5", "--B", "2", "--var", "r", "--start", "1",
        "--stop", "1", "--step", "0.1", "--method", "closed",
    ]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    let o = cli(&[
        "sweep", "toronto", "--m", "1", "--n", "0.5", "--B", "2", "--var", "r", "--start", "0",
        "--stop", "1", "--step", "-0.1", "--method", "closed",
    ]);
    assert_eq!(o.code, 2);
    let o = cli(&[
        "sweep", "toronto", "--m", "1", "--n", "0.5", "--B", "2", "--var", "a", "--start", "0.1",
        "--stop", "1", "--step", "0.1", "--method", "closed",
    ]);
    assert_eq!(o.code, 2);
}

#[test]
fn sweep_never_emits_partial_output() {
    // n passes m = 2 halfway through the grid
    let o = cli(&[
        "sweep", "toronto", "--m", "2", "--r", "1", "--B", "1", "--var", "n", "--start", "0.5",
        "--stop", "3.5", "--step", "0.5", "--method", "oracle",
    ]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("m ≥ n"), "{}", o.stderr);
}

#[test]
fn sweep_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let path_str = path.to_str().unwrap();
    let args = [
        "sweep",
        "toronto",
        "--m",
        "2",
        "--n",
        "0.5",
        "--r",
        "1",
        "--var",
        "B",
        "--start",
        "0.5",
        "--stop",
        "2",
        "--step",
        "0.5",
        "--method",
        "series3,closed",
    ];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path_str]);
    let o = cli(&with_out);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, cli(&args).stdout);
    assert_eq!(parse_sweep(&written).len(), 4);
}

#[test]
fn verify_single_identity_point_passes() {
    let o = cli(&[
        "verify",
        "toronto",
        "--m",
        "2",
        "--n",
        "0.5",
        "--r",
        "1",
        "--B",
        "1",
        "--rel-tol",
        "1e-8",
    ]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("verify: PASS"));
    assert!(o.stdout.contains("toronto closed vs oracle"));
}

#[test]
fn verify_unattainable_tolerance_fails() {
    let o = cli(&[
        "verify",
        "toronto",
        "--m",
        "2",
        "--n",
        "0.5",
        "--r",
        "1",
        "--B",
        "1",
        "--rel-tol",
        "1e-30",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("worst offender"));
    assert!(o.stdout.contains("m=2, n=0.5, r=1, B=1"), "{}", o.stdout);
}

#[test]
fn verify_tolerance_from_environment() {
    let args = [
        "verify", "toronto", "--m", "2", "--n", "0.5", "--r", "1", "--B", "1",
    ];
    let strict = Command::new(EXE)
        .args(args)
        .env("TORONTO_ILHI_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    let loose = Command::new(EXE)
        .args(args)
        .env("TORONTO_ILHI_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    let garbage = Command::new(EXE)
        .args(args)
        .env("TORONTO_ILHI_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn verify_ilhi_default_grid_passes() {
    let o = cli(&["verify", "ilhi", "--rel-tol", "1e-8"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("PASS ilhi closed vs oracle"));
    assert!(o.stdout.contains("PASS ilhi bound sandwich"));
}

#[test]
fn help_exits_zero() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("sweep"));
}
