use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lfvm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfvm")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lfvm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn idvg_is_identical_across_runs_and_threads() {
    let args = ["idvg", "--ar", "8,16,24", "--step", "0.02"];
    let a = stdout(&args);
    let b = stdout(&args);
    let c = stdout(&[&args[..], &["--parallel", "3"]].concat());
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.starts_with("ar,v_gs_V,i_d_A,c_gg_F_per_m2,p_C_per_m2,v_int_V,branch\n"));
}

#[test]
fn json_output_is_keyed_by_field_names() {
    let text = stdout(&["idvg", "--ar", "16", "--step", "0.02", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let s = &v["summary"][0];
    assert_eq!(s["ar"], 16.0);
    assert!(s["mw"].as_f64().unwrap() > 0.0);
    assert!(v["traces"][0]["trace"]["samples"].as_array().unwrap().len() > 10);
}

#[test]
fn missing_config_exits_2_and_names_path() {
    let out = lfvm(&["pv-loop", "--config", "/nonexistent/afe.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/afe.toml"));
}

#[test]
fn malformed_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "[lgd]\nalpha = 1.0\nbeta = nope\n").unwrap();
    let out = lfvm(&["pv-loop", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(lfvm(&["idvg", "--bogus"]).status.code(), Some(2));
    assert_eq!(lfvm(&["pv-loop", "--parallel", "0"]).status.code(), Some(2));
}

#[test]
fn invalid_parameters_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fe.toml");
    fs::write(&path, "[lgd]\nalpha = 1.0\nbeta = -1.8\nxi = -1.0\np_scale = 0.1\ne_scale = 1e9\n").unwrap();
    let out = lfvm(&["pv-loop", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xi"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("arrays.csv");
    let printed = stdout(&["array-compare"]);
    stdout(&["array-compare", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), printed);
}

fn write_script(dir: &Path, text: &str) -> String {
    let path = dir.join("ops.txt");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn empty_script_gives_header_only_log() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(dir.path(), "# nothing to do\n\n");
    let csv = stdout(&["cell-demo", &script]);
    assert_eq!(csv.lines().count(), 1, "{csv}");
    let json = stdout(&["cell-demo", &script, "--format", "json"]);
    assert_eq!(json.trim(), "[]");
}

#[test]
fn grounding_the_hold_loses_a_written_one() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(dir.path(), "WRITE 0 0 1\nREAD 0 0\nHOLD 1 0.0\nREAD 0 0\n");
    let json = stdout(&["cell-demo", &script, "--rows", "1", "--cols", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[1]["bit_read"], true);
    assert_eq!(v[3]["bit_read"], false);
}

#[test]
fn bad_script_reports_line_and_token() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(dir.path(), "WRITE 0 0 1\nWRIT 0 0 1\n");
    let out = lfvm(&["cell-demo", &script]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("WRIT"), "{err}");
}

#[test]
fn out_of_range_address_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(dir.path(), "WRITE 5 0 1\n");
    let out = lfvm(&["cell-demo", &script, "--rows", "2", "--cols", "2"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn retention_csv_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ret.csv");
    stdout(&["retention", "--mode", "unipolar", "--out", path.to_str().unwrap()]);
    let head = fs::read_to_string(&path).unwrap();
    assert!(head.starts_with("t_seconds,current_A,state\n"));
    let fit = stdout(&["fit", "retention", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&fit).unwrap();
    assert!(v["crossing"].as_f64().unwrap() > 0.0);
}

#[test]
fn endurance_csv_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("end.csv");
    let mut text = String::from("cycles,mw_V\n");
    for k in 0..=8 {
        text.push_str(&format!("{},{}\n", 10f64.powi(k), 1.0 - 0.05 * k as f64));
    }
    fs::write(&path, text).unwrap();
    let fit = stdout(&["fit", "endurance", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&fit).unwrap();
    let n = v["crossing"].as_f64().unwrap();
    assert!((n / 1e10 - 1.0).abs() < 1e-6, "{n}");
}

#[test]
fn fit_rejects_malformed_rows_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("end.csv");
    fs::write(&path, "cycles,mw_V\n1,1.0\nten,0.9\n").unwrap();
    let out = lfvm(&["fit", "endurance", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
