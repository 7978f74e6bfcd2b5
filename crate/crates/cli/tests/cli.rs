use std::process::{Command, Output};

use serde_json::Value;

fn gwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwell")).args(args).env("GWELL_THREADS", "2").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn npoint_one_point_is_one() {
    let out = gwell(&["npoint", "--n", "1", "--engine", "bo", "--q-order", "4", "--t-order", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["engine"], "bo");
    assert_eq!(v["seed"], 1);
    let coeffs = v["series"]["coeffs"].as_array().unwrap();
    assert_eq!(v["series"]["minExp"], 0);
    assert_eq!(coeffs[0][0], "1/1");
    let nonzero = coeffs.iter().flat_map(|r| r.as_array().unwrap()).filter(|c| *c != "0/1").count();
    assert_eq!(nonzero, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed 1"));
}

#[test]
fn npoint_two_point_bell_csv() {
    let out = gwell(&["npoint", "--n", "2", "--engine", "bell", "--q-order", "8", "--ray", "1,2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_exp,q_exp,coeff"));
    // E*_1(t) + E*_1(2t) = 1/t + 1/(2t) + ...
    assert!(text.lines().any(|l| l == "-1,0,3/2"));
    // coefficients are exact rationals, never decimals
    assert!(text.lines().skip(1).all(|l| l.rsplit(',').next().unwrap().contains('/')));

    let bo = gwell(&["npoint", "--n", "2", "--engine", "bo", "--q-order", "8", "--ray", "1,2", "--format", "csv"]);
    assert_eq!(String::from_utf8(bo.stdout).unwrap(), text);
}

#[test]
fn npoint_engines_agree_through_cli() {
    let run = |engine: &str| {
        let out = gwell(&["npoint", "--n", "3", "--engine", engine, "--q-order", "4", "--t-order", "3", "--ray", "1,3,-7"]);
        assert!(out.status.success(), "{engine}");
        stdout_json(&out)["series"].clone()
    };
    let bell = run("bell");
    for e in ["bo", "recursion", "compositions", "omega", "wedge"] {
        assert_eq!(run(e), bell, "{e}");
    }
}

#[test]
fn npoint_wick_ordering_shifts_two_point_by_one() {
    let run = |ordering: &str| {
        let out = gwell(&["npoint", "--n", "2", "--engine", "omega", "--ordering", ordering, "--ray", "1,3", "--q-order", "3", "--t-order", "2"]);
        assert!(out.status.success());
        stdout_json(&out)["series"]["coeffs"].clone()
    };
    let gw = run("gw");
    let wick = run("wick");
    // minExp is -1, so row 1 is t^0
    assert_eq!(gw[1][0], "0/1");
    assert_eq!(wick[1][0], "-1/1");
}

#[test]
fn npoint_symbolic_two_point() {
    let out = gwell(&["npoint", "--n", "2", "--engine", "bell", "--symbolic"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["weights"], serde_json::json!([1]));
}

#[test]
fn npoint_wedge_table() {
    let out = gwell(&["npoint", "--n", "3", "--engine", "wedge", "--q-order", "6", "--t-order", "0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let entries = v["coefficients"].as_array().unwrap();
    let lead = entries.iter().find(|e| e["zexp"] == serde_json::json!([-1, -1, -1])).unwrap();
    // partition numbers: prod of 1/z_i times 1/(q)_∞
    let p: Vec<&str> = lead["qcoeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(p, ["1/1", "1/1", "2/1", "3/1", "5/1", "7/1", "11/1"]);
}

#[test]
fn npoint_output_is_deterministic() {
    let args = ["npoint", "--n", "2", "--engine", "recursion", "--q-order", "5", "--seed", "9"];
    assert_eq!(gwell(&args).stdout, gwell(&args).stdout);
}

#[test]
fn bad_input_exits_two_with_error_json() {
    for args in [
        vec!["npoint", "--n", "2", "--ray", "1,-1"],
        vec!["npoint", "--n", "2", "--ray", "1,2,3"],
        vec!["npoint", "--n", "7"],
        vec!["npoint", "--n", "2", "--q-order", "30"],
        vec!["npoint", "--n", "2", "--ray", "1,x"],
        vec!["verify", "numeric", "--tau", "0.3-0.8i"],
        vec!["frobnicate"],
    ] {
        let out = gwell(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stdout_json(&out)["error"].is_string(), "{args:?}");
    }
}

#[test]
fn verify_small_suites_pass() {
    for suite in ["series", "combinatorics"] {
        let out = gwell(&["verify", suite]);
        assert!(out.status.success(), "{suite}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().count() >= 4);
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["pass"], true, "{line}");
        }
    }
}

#[test]
fn verify_numeric_at_one_tau() {
    let out = gwell(&["verify", "numeric", "--n", "2", "--tau", "0.3+0.8i", "--samples", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn gw_rows_and_flags() {
    let out = gwell(&["gw", "--ell", "0", "--ell=-2", "--ell", "0,1", "--q-order", "4"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows[0]["normalized"], serde_json::json!(["-1/24", "1/1", "3/1", "4/1", "7/1"]));
    assert_eq!(rows[1]["normalized"][0], "1/1");
    assert_eq!(rows[1]["genus"], 0);
    assert!(rows[2]["error"].is_string());
    let csv = gwell(&["gw", "--ell", "0,0", "--q-order", "2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("ell,genus,kind,q_exp,coeff\n"));
    assert!(text.contains("0;0,1,normalized,0,1/576"));
}

#[test]
fn fit_brackets_and_series_files() {
    let out = gwell(&["fit", "--ell", "0", "--q-order", "12"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["fit"]["polynomial"], "G_2");
    let out = gwell(&["fit", "--ell", "1,1"]);
    let v = stdout_json(&out);
    assert_eq!(v["fit"]["weight"], 6);
    assert_eq!(v["fit"]["checkedThrough"], 20);

    let dir = std::env::temp_dir().join(format!("gwell-fit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.json");
    // 1 + q: not quasimodular at any weight
    std::fs::write(&path, r#"{"var":"q","minExp":0,"order":12,"coeffs":["1/1","1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"]}"#).unwrap();
    let out = gwell(&["fit", "--series-file", path.to_str().unwrap(), "--max-weight", "6"]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["fit"].is_null());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_round_trips() {
    let dir = std::env::temp_dir().join(format!("gwell-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t2.json");
    let out = gwell(&["npoint", "--n", "2", "--ray", "1,2", "--q-order", "4", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let series = gwell_core::series::Laurent::from_json(&v["series"]).unwrap();
    assert_eq!(series.to_json("t"), v["series"]);
    std::fs::remove_dir_all(&dir).unwrap();
}
