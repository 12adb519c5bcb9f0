use std::process::{Command, Output};

use serde_json::Value;

fn okb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn curves_histogram_for_six_points() {
    let o = okb(&["curves", "-n", "6", "--histogram", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 27);
    assert_eq!(v["histogram"]["0"], 6);
    assert_eq!(v["histogram"]["1"], 15);
    assert_eq!(v["histogram"]["2"], 6);
}

#[test]
fn seshadri_text() {
    let o = okb(&["seshadri", "-n", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3/8");
}

#[test]
fn exit_codes() {
    assert_eq!(okb(&["test", "-n", "2", "-D", "1,1,1"]).status.code(), Some(0));
    assert_eq!(okb(&["zariski", "-n", "1", "-D", "-1,0"]).status.code(), Some(1));
    assert_eq!(okb(&["zariski", "-n", "2", "-D", "1,x,0"]).status.code(), Some(2));
    assert_eq!(okb(&["zariski", "-n", "3", "-D", "1,0"]).status.code(), Some(2));
    assert_eq!(okb(&["nosuch"]).status.code(), Some(2));
}

#[test]
fn psef_flag_reports_membership() {
    let yes = stdout(&okb(&["test", "-n", "2", "-D", "1,1,1", "--json"]));
    let v: Value = serde_json::from_str(&yes).unwrap();
    assert_eq!(v["holds"], true);
    let no = stdout(&okb(&["test", "-n", "1", "-D", "-1,0", "--json"]));
    let v: Value = serde_json::from_str(&no).unwrap();
    assert_eq!(v["holds"], false);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("body.json");
    let o = okb(&["dissect", "--eps", "1/3", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn verify_is_deterministic() {
    let a = okb(&["verify", "--suite", "lattice", "--seed", "7", "--json"]);
    let b = okb(&["verify", "--suite", "lattice", "--seed", "7", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn body_symmetric_json() {
    let o = okb(&["body", "-n", "0", "-d", "1", "-m", "0", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 0);
}
