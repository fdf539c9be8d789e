//! End-to-end tests of the `tqd` binary: exit codes, output shape, golden
//! values, and determinism.

use std::io::Write;
use std::process::{Command, Output};

fn tqd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqd"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

/// Parse one CSV field as f64 (column index within the given line).
fn field(line: &str, index: usize) -> f64 {
    line.split(',')
        .nth(index)
        .unwrap_or_else(|| panic!("no column {index} in {line}"))
        .parse()
        .unwrap_or_else(|e| panic!("column {index} of {line}: {e}"))
}

const SWEEP_HEADER: &str =
    "model,j1,j,b,temp,bipartition,mutual_information,classical_correlation,discord,method";

#[test]
fn spectrum_uniform_chain_agrees() {
    let out = tqd(&["spectrum", "--model", "spin", "--j1", "1", "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("max deviation:"));
    // Uniform antiferromagnetic chain: all eigenvalues are ±3.
    assert!(text.contains("-3.00000000000"));
    assert!(text.contains(" 3.00000000000"));
}

#[test]
fn spectrum_magnetic_includes_square_roots() {
    let out = tqd(&["spectrum", "--model", "magnetic", "--j", "1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    // ±√12 and ±√8 appear for J=1, B=1.
    assert!(
        text.contains("3.46410161514"),
        "missing sqrt(12) in:\n{text}"
    );
    assert!(
        text.contains("2.82842712475"),
        "missing sqrt(8) in:\n{text}"
    );
}

#[test]
fn spectrum_rejects_wrong_model_flags() {
    // Missing --j.
    let out = tqd(&["spectrum", "--model", "spin", "--j1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    // --b is not a spin-model parameter.
    let out = tqd(&[
        "spectrum", "--model", "spin", "--j1", "1", "--j", "1", "--b", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // --j1 is not a magnetic-model parameter.
    let out = tqd(&[
        "spectrum", "--model", "magnetic", "--j", "1", "--b", "1", "--j1", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn discord_of_central_singlet_is_one() {
    let out = tqd(&[
        "discord",
        "--model",
        "spin",
        "--j1",
        "0",
        "--j",
        "1",
        "--temp",
        "0",
        "--bipartition",
        "pair_23",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], SWEEP_HEADER);
    assert!(lines[1].starts_with("spin,"));
    assert!((field(lines[1], 8) - 1.0).abs() < 1e-9, "discord column");
    assert!(
        (field(lines[1], 6) - 2.0).abs() < 1e-9,
        "mutual information"
    );
    // The spin model has no b parameter: its CSV cell is empty.
    assert_eq!(lines[1].split(',').nth(3), Some(""));
}

#[test]
fn discord_of_uncoupled_chain_is_zero() {
    let out = tqd(&[
        "discord",
        "--model",
        "spin",
        "--j1",
        "0",
        "--j",
        "0",
        "--temp",
        "1",
        "--bipartition",
        "pair_12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let line = text.lines().nth(1).unwrap();
    assert!(field(line, 8).abs() < 1e-9);
}

#[test]
fn discord_magnetic_strong_field_json() {
    let out = tqd(&[
        "discord",
        "--model",
        "magnetic",
        "--j",
        "1",
        "--b",
        "10",
        "--temp",
        "0.25",
        "--bipartition",
        "pair_23",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let row = &rows.as_array().unwrap()[0];
    assert_eq!(row["model"], "magnetic");
    assert_eq!(row["j1"], serde_json::Value::Null);
    assert_eq!(row["bipartition"], "pair_23");
    assert!(row["discord"].as_f64().unwrap() > 0.8);
}

#[test]
fn discord_rejects_negative_temperature() {
    let out = tqd(&[
        "discord",
        "--model",
        "spin",
        "--j1",
        "1",
        "--j",
        "1",
        "--temp",
        "-1",
        "--bipartition",
        "pair_12",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // The domain check reports it, not the argument parser.
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("temperature"), "stderr:\n{stderr}");
}

#[test]
fn negative_couplings_parse_without_equals_signs() {
    // Ferromagnetic couplings are half the parameter space; `--j1 -2` must
    // work as well as `--j1=-2`.
    let out = tqd(&[
        "discord",
        "--model",
        "spin",
        "--j1",
        "-2",
        "--j",
        "-1",
        "--temp",
        "0.5",
        "--bipartition",
        "pair_23",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let line = text.lines().nth(1).unwrap();
    assert!((field(line, 1) + 2.0).abs() < 1e-12);
    assert!((field(line, 2) + 1.0).abs() < 1e-12);
}

#[test]
fn figure_1a_endpoints_sit_on_plateaus() {
    let out = tqd(&["figure", "--figure", "1", "--panel", "a"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines.len(),
        1 + 401 * 3,
        "header plus 401 J1 values x 3 temps"
    );
    assert_eq!(lines[0], SWEEP_HEADER);
    // First row: J1 = −12, T = 0.5 — deep in the 1/3 plateau.
    assert!((field(lines[1], 1) + 12.0).abs() < 1e-9);
    assert!((field(lines[1], 8) - 1.0 / 3.0).abs() < 1e-3);
    // Last row: J1 = 8, T = 1.5 — on the 0.4425 plateau.
    let last = lines.last().unwrap();
    assert!((field(last, 1) - 8.0).abs() < 1e-9);
    assert!((field(last, 8) - 0.4425).abs() < 1e-3);
}

#[test]
fn figure_output_is_byte_identical_across_runs() {
    let first = tqd(&["figure", "--figure", "2", "--panel", "b"]);
    let second = tqd(&["figure", "--figure", "2", "--panel", "b"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn figure_4_reaches_the_magnetic_asymptote() {
    let out = tqd(&["figure", "--figure", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let last = text.lines().last().unwrap();
    // Rows order bipartitions within each B value, so the final row is
    // (B = 20, pair_23).
    assert!(last.contains("pair_23"));
    assert!((field(last, 3) - 20.0).abs() < 1e-9);
    assert!(field(last, 8) > 0.95);
}

#[test]
fn figure_usage_errors_exit_one() {
    assert_eq!(tqd(&["figure", "--figure", "1"]).status.code(), Some(1));
    assert_eq!(
        tqd(&["figure", "--figure", "4", "--panel", "a"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tqd(&["figure", "--figure", "7"]).status.code(), Some(1));
}

#[test]
fn fit_short_run_matches_expected_slope() {
    let out = tqd(&[
        "fit",
        "--j",
        "1",
        "--branch",
        "j1_positive",
        "--bipartition",
        "pair_12",
        "--tmin",
        "2",
        "--tmax",
        "4",
        "--tpoints",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "header plus one row per temperature");
    assert_eq!(
        lines[0],
        "j,branch,bipartition,slope,intercept,rms_residual,temperature,j1c"
    );
    let slope = field(lines[1], 3);
    assert!((3.2..=3.6).contains(&slope), "slope {slope}");
    // J1c at T = 2 is near 3.401*2 + 1.001.
    let j1c = field(lines[1], 7);
    assert!((j1c - 7.803).abs() < 0.3, "j1c {j1c}");
}

#[test]
fn fit_json_matches_csv_values() {
    let args_common = [
        "fit",
        "--j",
        "1",
        "--branch",
        "j1_positive",
        "--bipartition",
        "pair_12",
        "--tmin",
        "2",
        "--tmax",
        "3",
        "--tpoints",
        "2",
    ];
    let csv = tqd(&args_common);
    let mut json_args = args_common.to_vec();
    json_args.extend(["--format", "json"]);
    let json = tqd(&json_args);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(json.status.code(), Some(0));

    let csv_text = stdout_str(&csv);
    let csv_slope = field(csv_text.lines().nth(1).unwrap(), 3);
    let rows: serde_json::Value = serde_json::from_str(&stdout_str(&json)).unwrap();
    let json_slope = rows[0]["slope"].as_f64().unwrap();
    assert!((csv_slope - json_slope).abs() < 1e-9);
    assert_eq!(rows[0]["branch"], "j1_positive");
    assert_eq!(rows.as_array().unwrap().len(), 2);
}

#[test]
fn fit_rejects_bad_temperature_window() {
    assert_eq!(
        tqd(&[
            "fit",
            "--j",
            "1",
            "--branch",
            "j1_positive",
            "--bipartition",
            "pair_12",
            "--tmin",
            "0",
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn sweep_runs_a_json_spec() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{
            "model": "spin",
            "swept": {{ "parameter": "j1", "min": 0.0, "max": 2.0, "points": 3 }},
            "fixed": {{ "j": 1.0 }},
            "temperatures": [0.5],
            "bipartitions": ["pair_12"]
        }}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let out = tqd(&["sweep", "--spec", path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], SWEEP_HEADER);
    assert!((field(lines[1], 1) - 0.0).abs() < 1e-12);
    assert!((field(lines[3], 1) - 2.0).abs() < 1e-12);

    let json_out = tqd(&["sweep", "--spec", path, "--format", "json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout_str(&json_out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[0]["model"], "spin");
    assert_eq!(rows[0]["temp"].as_f64(), Some(0.5));
}

#[test]
fn sweep_rejects_bad_specs() {
    let mut garbled = tempfile::NamedTempFile::new().unwrap();
    write!(garbled, "not json").unwrap();
    let out = tqd(&["sweep", "--spec", garbled.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Structurally valid JSON, invalid contents (single-point sweep).
    let mut invalid = tempfile::NamedTempFile::new().unwrap();
    write!(
        invalid,
        r#"{{
            "model": "spin",
            "swept": {{ "parameter": "j1", "min": 0.0, "max": 2.0, "points": 1 }},
            "fixed": {{ "j": 1.0 }},
            "temperatures": [0.5],
            "bipartitions": ["pair_12"]
        }}"#
    )
    .unwrap();
    let out = tqd(&["sweep", "--spec", invalid.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = tqd(&["sweep", "--spec", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn closed_pipe_is_not_an_error() {
    // A figure dataset overflows the pipe buffer, so `head` exiting early
    // delivers EPIPE mid-write; the binary must finish quietly.
    let out = Command::new("sh")
        .arg("-c")
        .arg(format!(
            "{} figure --figure 1 --panel a | head -2",
            env!("CARGO_BIN_EXE_tqd")
        ))
        .output()
        .expect("shell pipeline runs");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(!stderr.contains("panic"), "stderr:\n{stderr}");
    assert_eq!(stdout_str(&out).lines().count(), 2);
}

#[test]
fn help_exits_zero_and_unknown_flags_exit_one() {
    let help = tqd(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_str(&help).contains("tqd"));

    assert_eq!(tqd(&["discord", "--bogus"]).status.code(), Some(1));
    assert_eq!(tqd(&[]).status.code(), Some(1));
}
