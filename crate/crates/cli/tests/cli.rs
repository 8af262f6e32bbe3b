use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2fusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn dim_of_three_doublets() {
    let (code, v) = report(&["dim", "2,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "dim");
    assert_eq!(v["input"]["a"], json!([2, 2, 2]));
    assert_eq!(v["result"], 8);
    assert_eq!(check(&v, "product_formula")["pass"], true);
}

#[test]
fn report_has_the_four_fields() {
    let (_, v) = report(&["picard", "2,1,3"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["command", "input", "result", "checks"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["result"], 3);
}

#[test]
fn poincare_of_two_one() {
    let (code, v) = report(&["poincare", "2,1", "--recursive"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!([1, 2, 2, 1]));
    assert_eq!(check(&v, "recursion")["pass"], true);
}

#[test]
fn incomparable_orders() {
    let (code, v) = report(&["order", "2,1", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"],
        json!({"leq": false, "geq": false, "comparable": false})
    );
    let (_, v) = report(&["order", "1,1,1", "3"]);
    assert_eq!(
        v["result"],
        json!({"leq": false, "geq": true, "comparable": true})
    );
}

#[test]
fn character_checks_pass() {
    let (code, v) = report(&["char", "2,3,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["total"], 18);
    let terms = v["result"]["terms"].as_array().unwrap();
    let sum: u64 = terms.iter().map(|t| t["mult"].as_u64().unwrap()).sum();
    assert_eq!(sum, 18);
}

#[test]
fn submodule_and_exact_sequence() {
    let (code, v) = report(&["submodule", "2,3,4", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 8);
    assert_eq!(v["result"]["recipe"], "tensor_embedding");
    let (code, v) = report(&["exactseq", "2,4,5", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["submodule_dim"], 4);
}

#[test]
fn negative_bundle_weights_parse() {
    let (code, v) = report(&["degrees", "-1,0,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!([1, -1, -1]));
    let (code, v) = report(&["type", "-3,-3,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!([2, 1]));
}

#[test]
fn sections_match_module_dimension() {
    let (code, v) = report(&["sections", "0,1,1", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], 4);
    assert_eq!(check(&v, "module_dimension")["pass"], true);
}

#[test]
fn missing_bundle_is_invalid_input() {
    let (code, _) = report(&["sections", "0,1,2", "1,2"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_lists_are_rejected() {
    for args in [
        &["dim", "2, 2"][..],
        &["dim", "2,,2"],
        &["dim", ""],
        &["dim", "3,2"],
        &["poincare", "0,1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn resource_cap_exit_code() {
    let out = run(&["dim", "3,3,3,3,3", "--cap", "20"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn flag_check_is_deterministic() {
    let a = run(&["flag-check", "2,1,2", "--random", "4", "--seed", "7"]);
    let b = run(&["flag-check", "2,1,2", "--random", "4", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["random_passed"], 4);
}

#[test]
fn verlinde_fuse_and_limit() {
    let (code, v) = report(&["verlinde-fuse", "3", "3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["coeffs"], json!([1, 0, 0, 0]));
    let (code, v) = report(&["verlinde-limit", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["coeffs"], json!([1, 0]));
    assert_eq!(v["result"]["boundary_nonzero"], true);
    let (code, _) = report(&["verlinde-fuse", "2", "3", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn stabilization_of_one() {
    let (code, v) = report(&["stabilize", "1", "3", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["stable_from"], 2);
    assert_eq!(v["result"]["dimensions_match"], true);
}

#[test]
fn coordinate_ring_dims() {
    let (code, v) = report(&["coordring", "2,3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!([1, 6, 15, 28]));
}

#[test]
fn table_format() {
    let out = run(&["--format", "table", "dim", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result:  4"));
    assert!(text.contains("[PASS] product_formula"));
}

#[test]
fn reduced_selftest_passes() {
    let (code, v) = report(&["selftest", "--max-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}
