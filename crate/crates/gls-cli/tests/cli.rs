//! End-to-end tests of the `gls` binary: output values, exit codes, and
//! byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const S1_CONFIG: &str = r#"{
  "systems": [
    { "partition": [0, "1/3", "2/3", 1], "flips": [0, 0, 0] },
    { "partition": [0, "1/3", "2/3", 1], "flips": [1, 1, 1] }
  ],
  "weights": ["1/2", "1/2"]
}"#;

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn gls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gls"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn validate_reports_domination() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);

    let output = gls(&["validate", "--config", config.to_str().unwrap()]);
    let value = stdout_json(&output);
    assert_eq!(value["valid"], Value::Bool(true));
    assert_eq!(value["digits"], 6);
    assert_eq!(value["domination"]["holds"], Value::Bool(true));
    assert!(output.stderr.is_empty());
}

#[test]
fn validate_warns_when_domination_fails() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "undominated.json",
        &S1_CONFIG.replace("\"1/2\", \"1/2\"", "0.2, 0.8"),
    );

    let output = gls(&["validate", "--config", config.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let value = stdout_json(&output);
    assert_eq!(value["domination"]["holds"], Value::Bool(false));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("warning"), "stderr: {stderr}");
}

#[test]
fn validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_sum = write_config(
        dir.path(),
        "bad.json",
        &S1_CONFIG.replace("\"1/2\", \"1/2\"", "0.5, 0.6"),
    );
    let output = gls(&["validate", "--config", bad_sum.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);

    let malformed = write_config(dir.path(), "malformed.json", "not json at all");
    let output = gls(&["validate", "--config", malformed.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);

    let missing = dir.path().join("missing.json");
    let output = gls(&["validate", "--config", missing.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn dim_all_reports_the_uniform_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);

    let output = gls(&[
        "dim",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
    ]);
    let value = stdout_json(&output);
    assert!((value["dim_level_set"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((value["dim_fibre"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((value["dim_variational"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!((value["entropy"].as_f64().unwrap() - 6.0f64.ln()).abs() < 1e-12);
}

#[test]
fn dim_accepts_inline_and_file_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let inline = "0,0:1/4; 0,1:1/8; 0,2:1/8; 1,0:1/6; 1,1:1/6; 1,2:1/6";
    let output = gls(&[
        "dim",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        inline,
        "--mode",
        "lyapunov",
    ]);
    let value = stdout_json(&output);
    assert!((value["lyapunov_dim"].as_f64().unwrap() - 1.973197315178593).abs() < 1e-12);

    let alpha_file = write_config(
        dir.path(),
        "alpha.json",
        r#"{"0,0":"1/4","0,1":"1/8","0,2":"1/8","1,0":"1/6","1,1":"1/6","1,2":"1/6"}"#,
    );
    let output = gls(&[
        "dim",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        alpha_file.to_str().unwrap(),
        "--mode",
        "closed",
    ]);
    let value = stdout_json(&output);
    assert!((value["dim_level_set"].as_f64().unwrap() - 1.973197315178593).abs() < 1e-12);
}

#[test]
fn hypothesis_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);

    // a frequency vector concentrated on system 0 has a zero driving marginal
    let output = gls(&[
        "dim",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "0,0:1/2; 0,1:1/4; 0,2:1/4",
        "--mode",
        "fibre",
    ]);
    assert_eq!(exit_code(&output), 3);

    let undominated = write_config(
        dir.path(),
        "undominated.json",
        &S1_CONFIG.replace("\"1/2\", \"1/2\"", "0.2, 0.8"),
    );
    let output = gls(&[
        "dim",
        "--config",
        undominated.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--mode",
        "closed",
    ]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn schedule_abstract_weights_match_the_documented_word() {
    let output = gls(&["schedule", "--weights", "1/2,1/3,1/6", "--depth", "6"]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "e1 e2 e1 e3 e1 e2"
    );
}

#[test]
fn schedule_family_word_is_json_digits() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let output = gls(&[
        "schedule",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--depth",
        "6",
    ]);
    let value = stdout_json(&output);
    let word: Vec<(usize, usize)> = serde_json::from_value(value).unwrap();
    assert_eq!(word, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
}

#[test]
fn encode_then_decode_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);

    let output = gls(&[
        "encode",
        "--config",
        config.to_str().unwrap(),
        "--jseq",
        "1,1,1",
        "--x",
        "0.5",
    ]);
    let word = String::from_utf8(output.stdout.clone()).unwrap();
    let value = stdout_json(&output);
    let digits: Vec<(usize, usize)> = serde_json::from_value(value).unwrap();
    assert_eq!(digits, vec![(1, 1); 3]);

    let output = gls(&[
        "decode",
        "--config",
        config.to_str().unwrap(),
        "--word",
        word.trim(),
    ]);
    let value = stdout_json(&output);
    assert!((value["x"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((value["x_width"].as_f64().unwrap() - 1.0 / 27.0).abs() < 1e-15);
}

#[test]
fn decode_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let output = gls(&[
        "decode",
        "--config",
        config.to_str().unwrap(),
        "--word",
        "[[0,1],[0,1],[0,1]]",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("w,x,w_width,x_width"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("0.0625,0.5,"), "row: {row}");
}

#[test]
fn weave_preserves_the_driving_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let output = gls(&[
        "weave",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--jseq",
        "0,1,0,1",
    ]);
    let value = stdout_json(&output);
    let word: Vec<(usize, usize)> = serde_json::from_value(value).unwrap();
    assert_eq!(word, vec![(0, 0), (1, 0), (0, 1), (1, 1)]);
}

#[test]
fn pressure_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);

    let output = gls(&[
        "pressure",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--s",
        "1",
    ]);
    let value = stdout_json(&output);
    assert!((value["pressure"].as_f64().unwrap() - 3.0f64.ln()).abs() < 1e-12);

    let output = gls(&[
        "pressure",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--s",
        "2",
        "--inf",
    ]);
    let value = stdout_json(&output);
    assert!(value["inf_pressure"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn estimate_is_byte_reproducible_and_writes_clouds() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let cloud_path = dir.path().join("cloud.csv");

    let args = [
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--samples",
        "2000",
        "--depth",
        "10",
        "--seed",
        "42",
        "--cloud-out",
        cloud_path.to_str().unwrap(),
    ];
    let first = gls(&args);
    let second = gls(&args);
    assert!(first.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "same seed must give identical bytes"
    );

    let cloud = std::fs::read_to_string(&cloud_path).unwrap();
    let mut lines = cloud.lines();
    assert_eq!(lines.next(), Some("w,x"));
    assert_eq!(lines.count(), 2000);

    let value = stdout_json(&first);
    let slope = value["grid_entropy"]["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.25, "slope {slope}");
}

#[test]
fn estimate_fibre_target() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s1.json", S1_CONFIG);
    let output = gls(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--alpha",
        "uniform",
        "--target",
        "fibre",
        "--samples",
        "4000",
        "--seed",
        "9",
    ]);
    let value = stdout_json(&output);
    let slope = value["fit"]["slope"].as_f64().unwrap();
    assert!((slope - 1.0).abs() < 0.2, "slope {slope}");
}
