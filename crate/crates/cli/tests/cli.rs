use std::process::{Command, Output};

use serde_json::Value;

fn braidrack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidrack")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = braidrack(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn rack_commands() {
    let info = json(&["rack", "info", "T"]);
    assert_eq!(info["name"], "T");
    assert_eq!(info["degree"], 3);
    assert_eq!(info["k3"], 3);
    let iso = json(&["rack", "iso", "Aff(7,3)", "Aff(7,3)"]);
    assert_eq!(iso["isomorphic"], true);
    assert_eq!(json(&["rack", "iso", "Aff(7,3)", "Aff(7,5)"])["isomorphic"], false);
    let list = json(&["rack", "preset-list"]);
    assert_eq!(list.as_array().unwrap().len(), 8);
}

#[test]
fn rack_files_are_read_and_validated() {
    let dir = std::env::temp_dir().join(format!("braidrack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("d3.json");
    std::fs::write(&good, r#"{"size":3,"table":[[1,3,2],[3,2,1],[2,1,3]]}"#).unwrap();
    let info = json(&["rack", "info", good.to_str().unwrap()]);
    assert_eq!(info["name"], "D3");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"size":3,"table":[[1,3,2],[3,2,1],[2,2,3]]}"#).unwrap();
    let out = braidrack(&["rack", "info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3 is not a permutation"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_and_orbits() {
    let census = json(&["hurwitz", "census", "C"]);
    assert_eq!(census["counts"]["9"], 20);
    assert_eq!(census["total_check"], true);
    let orbit = json(&["hurwitz", "orbit", "T", "--seed", "1,2,3"]);
    let n = orbit["tuples"].as_array().unwrap().len();
    assert_eq!(orbit["sigma1"].as_array().unwrap().len(), n);
    let csv = braidrack(&["hurwitz", "census", "D3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "orbit_size,count,closed_form\n1,3,3\n8,3,3\n");
}

#[test]
fn immunity_rows() {
    let rows = json(&["immunity", "T"]);
    let by_size: Vec<(u64, u64, String)> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["orbit_size"].as_u64().unwrap(), r["plague_size"].as_u64().unwrap(), r["immunity"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(by_size, vec![(1, 1, "1".into()), (8, 3, "3/8".into()), (12, 4, "1/3".into())]);
}

#[test]
fn nichols_commands() {
    let dims = json(&["nichols", "dims", "D3", "--max-degree", "6"]);
    assert_eq!(dims["dims"], serde_json::json!([1, 3, 4, 3, 1, 0]));
    let ranks = json(&["nichols", "dims", "D3", "--q", "-1", "--max-degree", "4", "--method", "symmetrizer"]);
    let r: Vec<u64> = ranks.as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(r, vec![1, 3, 4, 3, 1]);
    let over_f3 = json(&["nichols", "dims", "D3", "--field", "Fp(3)", "--q", "1", "--max-degree", "2"]);
    assert_eq!(over_f3["field"], "Fp(3)");
    let cubic = json(&["nichols", "cubic", "D3", "--q", "2", "--max-degree", "3"]);
    assert_eq!(cubic["conditions"]["cond3"], false);
    let chain = json(&["nichols", "integral", "--preset", "d3char2"]);
    assert_eq!(chain["nonzero"], true);
    assert_eq!(chain["degree"], 20);
}

#[test]
fn quotient_from_relations_file() {
    let path = std::env::temp_dir().join(format!("braidrack-rel-{}.json", std::process::id()));
    let relations = r#"[
        {"degree": 2, "terms": [{"word": "aa", "coeff": "1"}]},
        {"degree": 2, "terms": [{"word": "bb", "coeff": "1"}]},
        {"degree": 2, "terms": [{"word": "cc", "coeff": "1"}]},
        {"degree": 2, "terms": [{"word": "ab", "coeff": "1"}, {"word": "bc", "coeff": "1"}, {"word": "ca", "coeff": "1"}]},
        {"degree": 2, "terms": [{"word": "ac", "coeff": "1"}, {"word": "cb", "coeff": "1"}, {"word": "ba", "coeff": "1"}]}
    ]"#;
    std::fs::write(&path, relations).unwrap();
    let q = json(&["nichols", "quotient", "D3", "--relations", path.to_str().unwrap(), "--max-degree", "8"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(q["total"], 12);
    assert_eq!(q["top_degree"], 4);
    assert_eq!(q["relations_in_kernel"], serde_json::json!([true, true, true, true, true]));
}

#[test]
fn classification() {
    let found = json(&["classify", "--degree", "3,4"]);
    let names: Vec<&str> = found.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["T", "B"]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(braidrack(&["nichols", "dims", "D3", "--cocycle", "nonsense"]).status.code(), Some(2));
    assert_eq!(braidrack(&["nichols", "integral", "--preset", "x"]).status.code(), Some(2));
    assert_eq!(braidrack(&["classify", "--size-max", "40"]).status.code(), Some(2));
    assert_eq!(braidrack(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_quick_profile_is_stable() {
    let first = braidrack(&["verify-paper", "--profile", "quick", "--format", "json", "--threads", "2"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let ids: Vec<&str> = report["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["P1", "P2", "P3", "P4", "P8", "P9", "P10", "P11"]);
    let second = Command::new(env!("CARGO_BIN_EXE_braidrack"))
        .args(["verify-paper", "--format", "json"])
        .env("THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
}
