use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ternary-ids")).args(args).env("RUST_LOG", "warn").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn ranks(row: &Value) -> (u64, u64, u64, u64) {
    let g = |k: &str| row[k].as_u64().unwrap();
    (g("sym"), g("symlif"), g("all"), g("new"))
}

#[test]
fn degree_11_small_dimensions_as_csv() {
    let out = run(&["table", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "partition,dim,sym,symlif,all,new");
    let expected = [
        "11,1,8,8,8,0",
        "1^11,1,0,7,7,0",
        "10 1,10,80,80,80,0",
        "2 1^9,10,57,76,76,0",
        "9 2,44,352,352,352,0",
        "2^2 1^7,44,302,333,333,0",
        "9 1^2,45,360,360,360,0",
        "3 1^8,45,333,349,349,0",
    ];
    assert_eq!(&lines[1..], &expected);
}

#[test]
fn degree_5_has_nothing_new() {
    let v = json(&["table", "--degree", "5"]);
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!(r["new"], 0);
        assert_eq!(r["row_space_match"], true);
    }
}

#[test]
fn degree_7_has_something_new_under_both_primes() {
    let v = json(&["table", "--degree", "7", "--max-dim", "1000", "--check-prime"]);
    assert!(v["second_prime"].as_u64().unwrap() < v["prime"].as_u64().unwrap());
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["new"].as_u64().unwrap() > 0));
}

#[test]
fn output_does_not_depend_on_threads_or_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["table", "--degree", "7", "--max-dim", "1000"];
    let plain = run(&base).stdout;
    let one = run(&[&base[..], &["--threads", "1"]].concat()).stdout;
    let cold = run(&[&base[..], &["--cache-dir", cache]].concat()).stdout;
    let warm = run(&[&base[..], &["--cache-dir", cache]].concat()).stdout;
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(plain, one);
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);
}

#[test]
fn explicit_partitions_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = run(&["table", "--partitions", "3,1^8;2^2 1^7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(ranks(&rows[0]), (333, 349, 349, 0));
    assert_eq!(ranks(&rows[1]), (302, 333, 333, 0));
}

#[test]
fn bad_input_exits_with_1() {
    assert_eq!(run(&["--prime", "100", "table"]).status.code(), Some(1));
    assert_eq!(run(&["--degree", "6", "table"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--partitions", "3,2"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--partitions", "x"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn extract_reports_missing_identity() {
    let out = Command::new(env!("CARGO_BIN_EXE_ternary-ids"))
        .args(["--degree", "7", "extract", "--partition", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no new identity"));
}

#[test]
fn extract_degree_7_identity() {
    let v = json(&["table", "--degree", "7", "--max-dim", "1000"]);
    let with_new: Vec<&str> =
        v["rows"].as_array().unwrap().iter().filter(|r| r["new"] != 0).map(|r| r["partition"].as_str().unwrap()).collect();
    let e = json(&["--degree", "7", "extract", "--partition", with_new[0]]);
    assert_eq!(e["emitted_in_all"], true);
    assert_eq!(e["emitted_outside_lifted"], true);
    assert!(!e["identity"]["entries"].as_array().unwrap().is_empty());
}
