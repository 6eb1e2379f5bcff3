use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucas-squares")).args(args).output().expect("spawn")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

fn pairs(v: &Value) -> Vec<(i64, i64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| {
            let p = if x.get("params").is_some() { &x["params"] } else { x };
            (p["p_coef"].as_i64().unwrap(), p["q_coef"].as_i64().unwrap())
        })
        .collect()
}

#[test]
fn search_n9() {
    let (code, v) = json(&["search", "--n", "9", "--bound", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "complete");
    assert_eq!(pairs(&v["result"]["hits"]), vec![(-2, 1), (2, 1)]);
}

#[test]
fn chabauty_u12() {
    let (code, v) = json(&["chabauty", "--case", "u12"]);
    assert_eq!(code, 0);
    assert_eq!(pairs(&v["result"]["conclusion"]["solutions"]), vec![(1, -1)]);
    assert_eq!(v["result"]["census"]["cosets"], 44);
}

#[test]
fn chabauty_undersupplied_precision_exits_2() {
    let (code, v) = json(&["chabauty", "--case", "u12", "--precision", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "incomplete");
    let uncertified: Vec<&Value> = v["result"]["cosets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["outcome"]["kind"] == "uncertified")
        .collect();
    assert!(!uncertified.is_empty());
    assert!(uncertified.iter().all(|c| c["outcome"]["required_precision"].as_u64().unwrap() > 3));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["chabauty", "--case", "u7"]).status.code(), Some(1));
    assert_eq!(run(&["search", "--bound", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Null => {}
        other => out.push(other.to_string()),
    }
}

#[test]
fn text_and_json_carry_the_same_facts() {
    for args in [&["descent", "--height", "10"][..], &["chabauty", "--case", "u9"][..]] {
        let (_, v) = json(args);
        let text = String::from_utf8(run(args).stdout).unwrap();
        let mut facts = vec![];
        leaves(&v, &mut facts);
        for f in facts {
            assert!(text.contains(&f), "{args:?}: text report lacks {f}");
        }
    }
}

#[test]
fn output_file_and_worker_count_do_not_change_the_report() {
    let dir = std::env::temp_dir().join(format!("lucas-squares-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut bodies = vec![];
    for workers in ["1", "4"] {
        let path = dir.join(format!("full-{workers}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_lucas-squares"))
            .args(["full", "--bound", "30", "--format", "json", "--output", path.to_str().unwrap()])
            .env("LUCAS_SQUARES_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let v: Value = serde_json::from_slice(&bodies[0]).unwrap();
    assert!(v["result"]["agreement"].as_array().unwrap().iter().all(|a| a["agrees"] == true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn theorem2_is_seeded() {
    let (code, a) = json(&["verify-theorem2", "--count", "20", "--seed", "5"]);
    let (_, b) = json(&["verify-theorem2", "--count", "20", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["result"].as_array().unwrap().len(), 2);
}
