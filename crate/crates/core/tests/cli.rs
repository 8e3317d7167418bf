use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank2")).args(args).env_remove("RANK2_CUTOFF").output().unwrap()
}

fn integers_only(v: &serde_json::Value) {
    match v {
        serde_json::Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "{n}"),
        serde_json::Value::Array(a) => a.iter().for_each(integers_only),
        serde_json::Value::Object(o) => o.values().for_each(integers_only),
        _ => {}
    }
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn split_table_and_exit_codes() {
    let o = run(&["split", "--p", "3", "--group", "C:3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["checks", "config", "summands", "version"]);
    let first = &v["summands"][0];
    assert_eq!(first["label"], "X_{0,0}");
    assert_eq!(first["description"], "DA{1}");
    assert_eq!(v["config"]["cutoff"], 36);

    assert_eq!(run(&["split", "--p", "3", "--group", "G:4,1"]).status.code(), Some(2));
    assert_eq!(run(&["split", "--p", "4", "--group", "C:3"]).status.code(), Some(2));
    assert_eq!(run(&["split", "--p", "3", "--group", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["split", "--p", "3", "--group", "C:3", "--cutoff", "20002"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--p", "3", "--group", "C:3", "--summand", "X:7,7"]).status.code(), Some(2));
    assert_eq!(run(&["split", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn json_field_order_and_determinism() {
    let a = run(&["verify", "--p", "3", "--group", "C:3", "--cutoff", "60"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["verify", "--p", "3", "--group", "C:3", "--cutoff", "60"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("version") < pos("config") && pos("config") < pos("checks") && pos("checks") < pos("summands"));
    integers_only(&serde_json::from_str(&text).unwrap());
}

#[test]
fn env_cutoff_and_markdown() {
    let o = Command::new(env!("CARGO_BIN_EXE_rank2"))
        .args(["series", "--p", "3", "--group", "C:3", "--summand", "X:0,0", "--format", "md"])
        .env("RANK2_CUTOFF", "48")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("cutoff = 48"));
    assert!(text.contains("[12, 16]"));
}

#[test]
fn recombine_examples() {
    let o = run(&["recombine", "--p", "7", "--group", "C:4", "--summand", "5,2"]);
    assert_eq!(o.status.code(), Some(0));
    let sols = &json(&o)["summands"][0]["recombinations"];
    assert!(sols.as_array().unwrap().iter().any(|s| {
        let mut v: Vec<&str> = s.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        v.sort();
        v == ["L(2,1)", "X_{5,2}(E)"]
    }));
    let o = run(&["recombine", "--p", "5", "--group", "G:5,1", "--summand", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let sols = &json(&o)["summands"][0]["recombinations"];
    assert!(sols.as_array().unwrap().iter().all(|s| s.as_array().unwrap().iter().any(|x| x == "L(1,0)")));
}

#[test]
fn verify_reports_honest_failure() {
    let o = run(&["verify", "--p", "3", "--group", "M:1,2,1"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["dim H^ev(2n) = n + 1 for M:1,2,1"]);
    let o = run(&["verify", "--p", "5", "--group", "G:4,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("relation y1 w = 0"));
}
