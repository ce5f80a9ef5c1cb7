use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn superchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = superchar(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn members(v: &Value) -> Vec<u64> {
    v["members"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn enumerate_counts() {
    for (group, count) in [("C2", 1), ("S3", 2), ("C4", 3), ("D4", 9)] {
        let v = json(&["enumerate", "--group", group]);
        assert_eq!(v["count"], count, "{group}");
        assert_eq!(v["theories"].as_array().unwrap().len(), count);
    }
}

#[test]
fn analyze_finest_s3() {
    let v = json(&["analyze", "--group", "S3"]);
    assert_eq!(members(&v["derived"]), [0, 3, 4]);
    assert_eq!(members(&v["center"]), [0]);
    assert_eq!(members(&v["v_theory"]), [0, 3, 4]);
    let a3 = v["s_normal"]
        .as_array()
        .unwrap()
        .iter()
        .find(|n| members(&n["subgroup"]) == [0, 3, 4])
        .unwrap();
    assert_eq!(members(&a3["u_rel"]), [0, 3, 4]);
    assert_eq!(a3["s_gcp"], true);
    assert_eq!(a3["camina_pair"], true);
}

#[test]
fn text_and_json_agree() {
    let v = json(&["analyze", "--group", "Q8"]);
    let text = String::from_utf8(superchar(&["analyze", "--group", "Q8"]).stdout).unwrap();
    assert!(text.contains(&format!("S-nilpotent, class {}", v["nilpotence_class"])));
    assert!(text.contains(&format!("VZ: {}", v["vz"])));
    assert!(text.contains("Z(S) = {0, 1}"));
    assert!(text.contains("supercharacter degrees: 1, 1, 1, 1, 4"));
}

#[test]
fn selectors() {
    let coarse = json(&["analyze", "--group", "D4", "--sct", "coarsest"]);
    assert_eq!(coarse["rank"], 2);
    let last = json(&["analyze", "--group", "D4", "--sct", "index:8"]);
    assert!(last["rank"].as_u64().unwrap() >= 2);
    assert_eq!(superchar(&["analyze", "--group", "D4", "--sct", "index:9"]).status.code(), Some(2));
    assert_eq!(superchar(&["analyze", "--group", "D4", "--sct", "middle"]).status.code(), Some(2));
}

#[test]
fn group_sources() {
    let perm = format!("perm:{}", data("s3_perm.txt"));
    let v = json(&["chartab", "--group", &perm]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 2]));
    let q8 = json(&["chartab", "--group", "Q8", "--table", &data("Q8.tbl")]);
    assert_eq!(q8["degrees"].as_array().unwrap().len(), 5);
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<Vec<String>> = vec![
        vec!["chartab".into(), "--group".into(), "S3".into(), "--table".into(), data("S3_corrupt.tbl")],
        vec!["chartab".into(), "--group".into(), format!("file:{}", data("loop5.grp"))],
        vec!["chartab".into(), "--group".into(), "Z7".into()],
        vec!["chartab".into(), "--group".into(), "S4".into(), "--max-order".into(), "12".into()],
        vec!["chartab".into(), "--group".into(), "file:/nonexistent".into()],
        vec!["chartab".into(), "--group".into(), "D4".into(), "--table".into(), data("Q8.tbl")],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = superchar(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn guard_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_superchar"))
        .args(["enumerate", "--group", "D4"])
        .env("SUPERCHAR_MAX_BELL", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5"));
}

#[test]
fn verify_writes_report() {
    let dir = std::env::temp_dir().join(format!("superchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    let out = superchar(&["verify", "--group", "C4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0 | 1)));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let s = &v["summary"];
    let total: u64 = ["pass", "fail", "vacuous", "na"].iter().map(|k| s[k].as_u64().unwrap()).sum();
    assert!(total > 0);
    assert_eq!(out.status.code(), Some(if s["fail"] == 0 { 0 } else { 1 }));
    std::fs::remove_dir_all(dir).unwrap();
}
