use std::process::{Command, Output};

use serde_json::Value;

fn rfsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfsg"))
        .args(args)
        .output()
        .expect("run rfsg")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = rfsg(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

#[test]
fn apery_golden() {
    let (v, code) = json(&["apery", "--gens", "14,17,20,21,23,26", "--mod", "14"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let elements: Vec<i64> = serde_json::from_value(v["output"]["elements"].clone()).unwrap();
    assert_eq!(elements, [0, 17, 20, 21, 23, 26, 38, 41, 43, 44, 46, 47, 64, 67]);

    let (v, _) = json(&["apery", "--gens", "2,3", "--mod", "2"]);
    assert_eq!(v["output"]["elements"], serde_json::json!([0, 3]));
}

#[test]
fn validation_errors_exit_2() {
    let (v, code) = json(&["apery", "--gens", "2,4"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"]["code"], 2);
    assert!(v["status"]["error"]["message"].as_str().unwrap().contains("GcdNotOne"));

    let (_, code) = json(&["rf", "--m0", "14", "--d", "3", "--p", "4", "--n", "21", "--f", "49"]);
    assert_eq!(code, 2);
    let (_, code) = json(&["structure", "--m0", "5", "--d", "1", "--p", "1", "--n", "10"]);
    assert_eq!(code, 2);
    let (_, code) = json(&["verify", "--m0", "5..9", "--d", "1", "--p", "2", "--n", "7"]);
    assert_eq!(code, 2);
    // argument parsing errors use the same code
    assert_eq!(rfsg(&["apery"]).status.code(), Some(2));
}

#[test]
fn rf_modes() {
    let base = ["rf", "--m0", "14", "--d", "3", "--p", "4", "--n", "21", "--f", "50"];
    let (v, code) = json(&[&base[..], &["--mode", "count"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["output"]["count"], 720);

    let (v, _) = json(&[&base[..], &["--mode", "enumerate", "--limit", "5"]].concat());
    assert_eq!(v["output"]["matrices"].as_array().unwrap().len(), 5);

    let (v, _) = json(&base);
    assert_eq!(
        v["output"]["matrices"][0]["rows"][5],
        serde_json::json!([2, 1, 0, 0, 1, -1])
    );

    let table = rfsg(&[&base[..], &["--mode", "count"]].concat());
    assert!(String::from_utf8(table.stdout).unwrap().contains("720"));
}

#[test]
fn structure_constants() {
    let (v, code) = json(&["structure", "--m0", "11", "--d", "2", "--p", "4", "--n", "21"]);
    assert_eq!(code, 0);
    let c = &v["output"]["constants"];
    let got: Vec<i64> = ["u", "v", "w", "z", "lambda", "mu", "nu"]
        .iter()
        .map(|k| c[*k].as_i64().unwrap())
        .collect();
    assert_eq!(got, [5, 3, 1, 4, 1, 4, 5]);
}

#[test]
fn relations_and_ideal() {
    let (v, _) = json(&["relations", "--m0", "10", "--d", "9", "--p", "3", "--n", "35", "--f", "81"]);
    let rels = v["output"]["relations"].as_array().unwrap();
    assert!(rels.iter().any(|r| r["plus"] == serde_json::json!([1, 0, 1, 0, 0])
        && r["minus"] == serde_json::json!([0, 2, 0, 0, 0])));

    let (v, _) = json(&["ideal", "--gens", "2,3"]);
    assert_eq!(v["output"]["count"], 1);
    assert_eq!(
        v["output"]["generators"][0],
        serde_json::json!({"plus": [3, 0], "minus": [0, 2], "degree": 6})
    );
}

#[test]
fn verify_single() {
    let (v, code) = json(&["verify", "--m0", "10", "--d", "9", "--p", "3", "--n", "35"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["holds"], true);
    assert_eq!(v["output"]["ideal_generators"], 6);
    assert!(!v["output"]["witness"].as_object().unwrap().is_empty());
}

#[test]
fn verify_sweep_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.jsonl");
    let path_str = path.to_str().unwrap();
    let args = ["verify", "--sweep", "--m0", "5..12", "--d", "1..3", "--p", "2", "--out", path_str];
    let (v, code) = json(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["output"]["counterexamples"], serde_json::json!([]));
    let two = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<Value> = two.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len() as u64, v["output"]["symmetric"].as_u64().unwrap());
    assert!(lines.iter().all(|l| l["holds"] == true));

    json(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), two);
}

#[test]
fn formats_share_a_payload() {
    let (v, _) = json(&["pf", "--gens", "14,17,20,21,23,26"]);
    assert_eq!(v["output"]["pseudo_frobenius"], serde_json::json!([50, 53]));
    let table = String::from_utf8(rfsg(&["pf", "--gens", "14,17,20,21,23,26"]).stdout).unwrap();
    assert!(table.contains("pseudo_frobenius  [50, 53]"), "{table}");
    assert!(table.contains("type              2"), "{table}");
}
