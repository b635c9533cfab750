use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qbounds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn pair_four_lines() {
    let out = qbounds(&["pair", "--n", "3", "--p", "3", "--q1", "x0^2+x1^2-x2^2", "--q2", "x0*x1"]);
    let v = json_of(&out);
    assert_eq!(v["count"], 13);
    assert_eq!(v["bound_theorem"], 13);
    assert_eq!(v["slack"], 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("pair_four_lines.json"));
}

#[test]
fn extremal_rank1() {
    let out = qbounds(&["extremal", "--name", "rank1", "--n", "4", "--p", "2"]);
    let v = json_of(&out);
    // 2 q^2 + pi_1
    assert_eq!(v["count"], 11);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("extremal_rank1.json"));
}

#[test]
fn bounds_table() {
    let out = qbounds(&["bounds", "--n", "4", "--p", "2", "--d", "4", "--s", "2"]);
    let v = json_of(&out);
    let get = |name: &str| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["name"] == name)
            .map(|e| e["value"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(get("tss"), "19");
    assert_eq!(get("lachaud"), "28");
    assert_eq!(get("lachaud_conj"), "25");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("bounds_n4_q2.json"));
}

#[test]
fn exit_codes() {
    assert_eq!(qbounds(&["pair", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qbounds(&["bounds", "--n", "3", "--p", "4"]).status.code(), Some(2));
    let bad = qbounds(&["classify", "--n", "2", "--p", "3", "--q1", "x0*x1*x2"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("x0*x1*x2"));
    assert_eq!(
        qbounds(&["classify", "--n", "2", "--p", "3", "--q1", "x0^2 - x0^2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        qbounds(&["count", "--n", "2", "--p", "3", "--q1", "x5^2"]).status.code(),
        Some(3)
    );
}

#[test]
fn census_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, file: &str| {
        let path = dir.path().join(file);
        let out = qbounds(&[
            "census", "--n", "3", "--p", "2", "--workers", workers, "--chunk", "100", "--out",
            path.to_str().unwrap(),
        ]);
        let v = json_of(&out);
        (v, std::fs::read(path).unwrap())
    };
    let (v, a) = run("1", "a.jsonl");
    let (_, b) = run("3", "b.jsonl");
    assert_eq!(a, b);
    assert_eq!(v["max_in_hypothesis"], 9);
    assert!(v["violations"].as_array().unwrap().is_empty());

    let csv = qbounds(&["census", "--n", "3", "--p", "2", "--format", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q1_class,pairs_checked,in_hypothesis,max_count,bound,extremal_count")
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn conjecture_reports() {
    let v = json_of(&qbounds(&["conjecture", "--kind", "1", "--n", "4", "--p", "2", "--r", "4"]));
    assert_eq!(v["conjectured_bound"], 17);
    assert_eq!(v["max_observed"], 17);
    assert!(v["counterexamples"].as_array().unwrap().is_empty());

    let v = json_of(&qbounds(&[
        "conjecture", "--kind", "2", "--n", "3", "--p", "3", "--forms", "x0*x1; x0^2+x1^2-x2^2", "--k", "2",
    ]));
    assert_eq!(v["count"], 13);
    assert_eq!(v["d"], 4);
    assert_eq!(v["s"], 1);
    assert_eq!(v["holds"], true);
}

#[test]
fn count_and_classify() {
    let v = json_of(&qbounds(&["count", "--n", "3", "--p", "2", "--q1", "x0*x1", "--k", "3"]));
    assert_eq!(v["count"], 137);
    let v = json_of(&qbounds(&["count", "--n", "3", "--p", "3", "--forms", "x0; x1; x2; x3"]));
    assert_eq!(v["count"], 0);
    let v = json_of(&qbounds(&["classify", "--n", "3", "--p", "2", "--m", "2", "--q1", "x0*x1+x2^2+[0,1]*x3^2"]));
    assert_eq!(v["rank"], 3);
    assert_eq!(v["type"], "parabolic");
}
