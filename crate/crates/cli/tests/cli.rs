use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const FIGURE: &str = r#"{"g":22,"r":6,"d":25,"rows":[[1,3,6,9,10,13,15],[2,5,7,12,16,19,20],[4,8,11,14,17,21,22]]}"#;

fn tropbn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropbn")).args(args).output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropbn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn counts() {
    let o = tropbn(&["tableaux", "count", "--rows", "3", "--cols", "7", "--entries", "23"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "350574510");
    let o = tropbn(&["tableaux", "count", "--rows", "1", "--cols", "1", "--entries", "3"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "3");
    let o = tropbn(&["tableaux", "enumerate", "--rows", "2", "--cols", "2", "--entries", "4"]);
    assert_eq!(json_out(&o).as_array().unwrap().len(), 2);
}

#[test]
fn analyze_figure() {
    let path = scratch("fig.json");
    std::fs::write(&path, FIGURE).unwrap();
    let v = json_out(&tropbn(&["tableaux", "analyze", "--file", path.to_str().unwrap()]));
    assert_eq!((v["z"].as_u64(), v["zp"].as_u64(), v["b"].as_u64(), v["bp"].as_u64()), (Some(7), Some(15), Some(9), Some(11)));
    assert_eq!(v["lingering"], serde_json::json!([18]));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"g":22,"r":6,"d":25,"rows":[[2,1]]}"#).unwrap();
    assert_eq!(tropbn(&["tableaux", "analyze", "--file", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(tropbn(&["tableaux", "count", "--rows", "x"]).status.code(), Some(2));
    assert_eq!(tropbn(&["slope", "--genus", "5"]).status.code(), Some(2));
    assert_eq!(tropbn(&["chow", "harris-tu", "--g", "22", "--r", "1", "--d", "16", "--exp", "9,0"]).status.code(), Some(2));
}

#[test]
fn build_verify_and_tamper() {
    let fig = scratch("fig2.json");
    std::fs::write(&fig, FIGURE).unwrap();
    let cert = scratch("cert.json");
    let o = tropbn(&["indep", "build", "--tableau", fig.to_str().unwrap(), "--seed", "7", "--out", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let o = tropbn(&["indep", "verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    j["coefficients"]["00"] = Value::String("1000000000000000".into());
    let bad = scratch("cert-bad.json");
    std::fs::write(&bad, j.to_string()).unwrap();
    let o = tropbn(&["indep", "verify", "--cert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    // Coefficients are far below zero at this scale, so φ_00 now swamps
    // almost every other function.
    let v = json_out(&o);
    assert_eq!(v["verified"], false);
    assert!(!v["failing"].as_array().unwrap().is_empty());
}

#[test]
fn harris_tu_and_eval() {
    let v = json_out(&tropbn(&["chow", "harris-tu", "--g", "22", "--r", "1", "--d", "16", "--exp", "3,0"]));
    assert_eq!(v["value"], "22348085760");
    let v = json_out(&tropbn(&["chow", "eval", "--s", "2", "--expr", "c5"]));
    assert_eq!(v["value"], "42");
}

#[test]
fn slopes() {
    let v = json_out(&tropbn(&["slope", "--genus", "23"]));
    assert_eq!(v["b1"], "13502337992");
    assert_eq!(v["slope"], "470749/72725");
    assert_eq!(v["general_type"], true);
    let v = json_out(&tropbn(&["slope", "--s", "2"]));
    assert_eq!(v["slope"], "7");
    assert_eq!(v["g"], 11);
}

#[test]
fn small_sweep_is_deterministic() {
    let run = |jobs: &str| {
        let o = tropbn(&["indep", "sweep", "--genus", "22", "--sample", "6", "--seed", "3", "--jobs", jobs]);
        assert!(o.status.success());
        let mut v = json_out(&o);
        v.as_object_mut().unwrap().remove("wall_time");
        v.as_object_mut().unwrap().remove("jobs");
        v
    };
    let a = run("1");
    assert_eq!(a["verified"], 6);
    assert_eq!(a, run("2"));
}
