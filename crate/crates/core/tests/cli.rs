use std::process::{Command, Output};

use serde_json::{json, Value};

fn twalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twalg"))
        .args(args)
        .env_remove("TWALG_CAP")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn decompose_json_golden() {
    let out = twalg(&["decompose", "--d", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["total"], 81);
    assert_eq!(
        v["blocks"],
        json!([
            {"type": [4, 0, 0], "weight": [4, 0], "dim": 15, "mult": 1},
            {"type": [3, 1, 0], "weight": [2, 1], "dim": 15, "mult": 3},
            {"type": [2, 2, 0], "weight": [0, 2], "dim": 6, "mult": 2},
            {"type": [2, 1, 1], "weight": [1, 0], "dim": 3, "mult": 3},
        ])
    );
}

#[test]
fn table_lists_blocks_and_passes() {
    let out = twalg(&["decompose", "--d", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[3, 0, 0], (3, 0) : 10, 1"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_is_thread_count_independent() {
    let one = twalg(&["verify", "--d", "3", "--format", "json", "--max-threads", "1"]);
    let four = twalg(&["verify", "--d", "3", "--format", "json", "--max-threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(json_of(&one), json_of(&four));
}

#[test]
fn closure_dimension() {
    let out = twalg(&["closure", "--d", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("165"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(twalg(&["decompose", "--d", "0"]).status.code(), Some(2));
    assert_eq!(twalg(&["decompose"]).status.code(), Some(2));
    assert_eq!(twalg(&["frobnicate"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_twalg"))
        .args(["decompose", "--d", "2"])
        .env("TWALG_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_caps_exit_3() {
    assert_eq!(twalg(&["decompose", "--d", "9"]).status.code(), Some(3));
    assert_eq!(twalg(&["closure", "--d", "5"]).status.code(), Some(3));
    assert_eq!(twalg(&["closure", "--d", "3", "--cap-closure", "2"]).status.code(), Some(3));
}
