//! End-to-end tests of the command-line interface: output shapes, exit-code
//! contract, determinism, and the cache directory.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nullmotive")
}

struct Workspace {
    dir: PathBuf,
}

impl Workspace {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("nullmotive-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        Workspace { dir }
    }

    fn write_quiver(&self, name: &str, json: &str) -> PathBuf {
        let path = self.dir.join(name);
        std::fs::write(&path, json).unwrap();
        path
    }
}

impl Drop for Workspace {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const LOOP1: &str = r#"{"vertices":["v"],"arrows":[["v","v",1]]}"#;
const LOOP2: &str = r#"{"vertices":["v"],"arrows":[["v","v",2]]}"#;
const A2: &str = r#"{"vertices":["i","j"],"arrows":[["i","j",1]]}"#;

#[test]
fn motive_one_loop_d2() {
    let ws = Workspace::new("motive");
    let q = ws.write_quiver("loop1.json", LOOP1);
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":2}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "L^2");
}

#[test]
fn motive_hesselink_method_and_formats() {
    let ws = Workspace::new("fmt");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":2}"#,
        "--method",
        "hesselink",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "L^3 + L^2 - L");
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":2}"#,
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&out).trim(), r#"[[1,"-1"],[2,"1"],[3,"1"]]"#);
}

#[test]
fn motive_zero_dimension_vector() {
    let ws = Workspace::new("zero");
    let q = ws.write_quiver("a2.json", A2);
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"i":0,"j":0}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn cross_check_is_quiet_on_agreement() {
    let ws = Workspace::new("xcheck");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":3}"#,
        "--cross-check",
    ]);
    assert!(out.status.success());
}

#[test]
fn exit_code_on_malformed_input() {
    let ws = Workspace::new("bad");
    let q = ws.write_quiver("bad.json", "{ not json");
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":1}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    // unknown vertex in the dimension vector
    let q = ws.write_quiver("loop1.json", LOOP1);
    let out = run(&[
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"zz":1}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_on_budget() {
    let ws = Workspace::new("budget");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let out = run(&[
        "oracle",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":4}"#,
        "-q",
        "3",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_matches_small_case() {
    let ws = Workspace::new("oracle");
    let q = ws.write_quiver("loop1.json", LOOP1);
    let out = run(&[
        "oracle",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":2}"#,
        "-q",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["eval"], "4");
    assert_eq!(v["match"], true);
}

#[test]
fn strata_table_two_rows() {
    let ws = Workspace::new("strata");
    let q = ws.write_quiver("loop1.json", LOOP1);
    let out = run(&[
        "strata",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":2}"#,
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let phis: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["phi"].as_i64().unwrap())
        .collect();
    assert!(phis.contains(&-1) && phis.contains(&0));
}

#[test]
fn check_suite_and_exit_codes() {
    let ws = Workspace::new("check");
    let q = ws.write_quiver("loop1.json", LOOP1);
    let out = run(&["check", "gfi", "--quiver", q.to_str().unwrap(), "-D", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["pass"], true);
    // dt check rejects non-symmetric input with exit 2
    let qa = ws.write_quiver("a2.json", A2);
    let out = run(&["check", "dt", "--quiver", qa.to_str().unwrap(), "-D", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dt_table_shape() {
    let ws = Workspace::new("dt");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let out = run(&["dt", "--quiver", q.to_str().unwrap(), "-D", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["d"], serde_json::json!({"v": 1}));
    assert_eq!(rows[0]["dt"], serde_json::json!([[2, "1"]]));
    assert_eq!(rows[1]["dt"], serde_json::json!([[5, "-1"]]));
}

#[test]
fn dt_point_quiver_vanishes_beyond_one() {
    let ws = Workspace::new("dtpoint");
    let q = ws.write_quiver("point.json", r#"{"vertices":["v"],"arrows":[]}"#);
    let out = run(&["dt", "--quiver", q.to_str().unwrap(), "-D", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows[0]["dt"], serde_json::json!([[0, "1"]]));
    assert_eq!(rows[1]["d"], serde_json::json!({"v": 2}));
    assert_eq!(rows[1]["dt"], serde_json::json!([]));
}

#[test]
fn output_is_byte_stable() {
    let ws = Workspace::new("stable");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let args = [
        "strata",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":3}"#,
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_fixtures_writes_reference_polynomials() {
    let ws = Workspace::new("seed");
    let out_dir = ws.dir.join("fixtures");
    let out = run(&["seed-fixtures", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let names: Vec<String> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().to_string())
        .collect();
    assert_eq!(names.len(), 13); // 12 polynomials + index
    let text = std::fs::read_to_string(out_dir.join("mloop_N2_m2.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // L^3 + L^2 - L
    assert_eq!(v, serde_json::json!([[1, "-1"], [2, "1"], [3, "1"]]));
}

#[test]
fn cache_directory_round_trip() {
    let ws = Workspace::new("cache");
    let q = ws.write_quiver("loop2.json", LOOP2);
    let cache = ws.dir.join("cache");
    let args = [
        "motive",
        "--quiver",
        q.to_str().unwrap(),
        "--dim",
        r#"{"v":3}"#,
    ];
    let a = run_env(&args, "NULLMOTIVE_CACHE_DIR", &cache);
    assert!(a.status.success());
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 1);
    // second run loads the cache and reproduces the output
    let b = run_env(&args, "NULLMOTIVE_CACHE_DIR", &cache);
    assert_eq!(a.stdout, b.stdout);
}
