use std::process::{Command, Output};

use serde_json::Value;

fn equivar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equivar"))
        .args(args)
        .env_remove("EQUIVAR_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = equivar(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_ok(v: &Value, t: &Value) -> bool {
    let one = |name: &str| match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "integer" => v.is_u64() || v.is_i64(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    };
    match t {
        Value::String(s) => one(s),
        Value::Array(ts) => ts.iter().any(|x| x.as_str().is_some_and(one)),
        _ => true,
    }
}

fn validate(v: &Value, s: &Value) {
    let obj = v.as_object().expect("object");
    for key in s["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    let props = s["properties"].as_object().unwrap();
    for (k, x) in obj {
        let p = props.get(k).unwrap_or_else(|| panic!("unexpected key {k}"));
        if let Some(t) = p.get("type") {
            assert!(type_ok(x, t), "{k} = {x} is not {t}");
        }
        if let Some(e) = p.get("enum") {
            assert!(e.as_array().unwrap().contains(x));
        }
    }
}

#[test]
fn dim_examples() {
    let v = json(&["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]);
    assert_eq!(v["result"]["dimension"], 12);
    assert_eq!(v["result"]["agree"], true);
    let v = json(&["dim", "--kind", "P", "--s", "0", "--n", "0", "--N", "4"]);
    assert_eq!(v["result"]["dimension"], 1);
    let v = json(&["dim", "--kind", "P", "--s", "1", "--n", "1", "--N", "3"]);
    assert_eq!(v["result"]["dimension"], 24);
}

#[test]
fn table_output() {
    let out = equivar(&["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dimension: 12"));
}

#[test]
fn tor_matches_q() {
    let v = json(&["tor", "--s", "1", "--r", "2", "--N", "3"]);
    assert_eq!(v["result"]["matches_q"], serde_json::json!([true, true]));
    assert_eq!(v["result"]["characters"][0], v["result"]["q_character"]);
}

#[test]
fn kclass_p2q() {
    let v = json(&["kclass", "--op", "p2q", "--s", "1", "--lambda", "2"]);
    assert_eq!(v["result"], serde_json::json!({"Q_1(2)": "3", "Q_1(1,1)": "1"}));
}

#[test]
fn kclass_other_ops() {
    let v = json(&["kclass", "--op", "q2p", "--s", "1", "--lambda", "1"]);
    assert_eq!(v["result"], serde_json::json!({"P_1(1)": "1/2"}));
    let v = json(&["kclass", "--op", "rank", "--s", "2", "--lambda", "2,1"]);
    assert_eq!(v["result"]["2"]["2,1"], serde_json::json!([1, 1]));
    let v = json(&["kclass", "--op", "tensor", "--s", "1", "--lambda", "1", "--mu", "1"]);
    assert_eq!(v["result"]["1"]["mult"]["1"], 1);
    let out = equivar(&["kclass", "--op", "tensor", "--s", "1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hom_stable_dims() {
    // Maps Q_{s,n} -> Q_{s,m} are indexed by injections [m] -> [n].
    let v = json(&["hom", "--src", "Q,1,2", "--dst", "Q,1,1", "--N", "4"]);
    assert_eq!(v["stable_dims"], 2);
    let v = json(&["hom", "--src", "Q,1,1", "--dst", "Q,1,2", "--N", "4"]);
    assert_eq!(v["stable_dims"], 0);
    assert!(v["dims"]["4"].is_u64() && v["dims"]["5"].is_u64());
}

#[test]
fn ext_modes() {
    let v = json(&["ext", "--src", "Q,1,1", "--dst", "Q,1,1", "--N", "3", "--degrees", "4"]);
    assert_eq!(v["stable_dims"], serde_json::json!([1, 1, 1, 1]));
    let v = json(&["ext", "--src", "Q,1,1", "--dst", "P,1,1", "--N", "3", "--truncated"]);
    assert_eq!(v["dims"][1], 0);
    assert_eq!(v["dims"][2], 0);
    let out = equivar(&["ext", "--src", "Q,1,1", "--dst", "P,1,1", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cas_ops() {
    let v = json(&["cas", "--op", "hom-dim", "--m", "1", "--n", "2", "--s", "1"]);
    assert_eq!(v["result"]["hom_dim"], 8);
    let v = json(&["cas", "--op", "injective", "--m", "1", "--n", "1", "--s", "1"]);
    assert_eq!(v["result"]["socle_dim"], 1);
    let v = json(&["cas", "--op", "compare", "--m", "1", "--n", "2", "--s", "1"]);
    assert_eq!(v["result"]["agree"], true);
    let f = r#"{"m":1,"n":1,"s":1,"terms":[{"injection":[1],"monomial":[1],"num":1,"den":1}]}"#;
    let v = json(&["cas", "--op", "compose", "--f", f, "--g", f]);
    assert_eq!(v["result"]["terms"], serde_json::json!([]));
}

#[test]
fn bad_parameters_exit_2() {
    for args in [
        vec!["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "9"],
        vec!["dim", "--kind", "X", "--s", "1", "--n", "1", "--N", "3"],
        vec!["dim", "--kind", "Q", "--s", "1", "--n", "4", "--N", "3"],
        vec!["hom", "--src", "R,1,1", "--dst", "Q,1,1", "--N", "3"],
        vec!["kclass", "--op", "p2q", "--s", "1", "--lambda", "1,2"],
        vec!["cas", "--op", "compose", "--f", "{", "--g", "{}"],
        vec!["verify", "--suite", "nosuch"],
    ] {
        assert_eq!(equivar(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn max_dim_guard() {
    let out = Command::new(env!("CARGO_BIN_EXE_equivar"))
        .args(["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"])
        .env("EQUIVAR_MAX_DIM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = equivar(&["--max-dim", "11", "dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = equivar(&["--max-dim", "12", "dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]);
    assert!(out.status.success());
}

#[test]
fn deterministic_json() {
    let args = ["--format", "json", "--no-runtime", "tor", "--s", "2", "--r", "3", "--N", "3"];
    let a = equivar(&args).stdout;
    let b = equivar(&args).stdout;
    assert_eq!(a, b);
    assert!(!String::from_utf8(a).unwrap().contains("runtime_ms"));
}

#[test]
fn reports_match_schema() {
    let s = schema();
    for args in [
        vec!["dim", "--kind", "P", "--s", "1", "--n", "1", "--N", "3"],
        vec!["hom", "--src", "Q,1,1", "--dst", "P,1,1", "--N", "3"],
        vec!["ext", "--src", "Q,1,1", "--dst", "Q,1,1", "--N", "3"],
        vec!["tor", "--s", "1", "--r", "1", "--N", "2"],
        vec!["kclass", "--op", "mu", "--s", "1", "--lambda", "2"],
        vec!["cas", "--op", "compare", "--m", "1", "--n", "1", "--s", "1"],
    ] {
        validate(&json(&args), &s);
    }
}

#[test]
fn verify_lines_match_schema() {
    let out = equivar(&["--format", "json", "verify", "--suite", "tor", "--jobs", "2"]);
    assert!(out.status.success());
    let s = schema();
    let check = &s["$defs"]["check"];
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for l in lines {
        let v: Value = serde_json::from_str(l).unwrap();
        validate(&v, check);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn verify_named_suites() {
    for suite in ["phi", "kgroup", "cas", "ext_self"] {
        let out = equivar(&["verify", "--suite", suite, "--max-N", "3"]);
        assert!(out.status.success(), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn verify_qqmaps() {
    let out = equivar(&["verify", "--suite", "qqmaps"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
