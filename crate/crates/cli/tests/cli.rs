use std::process::{Command, Output};

fn altinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn ztable_seven() {
    let o = altinv(&["ztable", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "lambda2 = 5*lambda1 - 14",
        "lambda3 = 10*lambda1 - 35",
        "lambda4 = 10*lambda1 - 35",
        "lambda5 = 5*lambda1 - 14",
        "lambda6 = lambda1",
        "lambda7 = 1",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn ztable_four_json() {
    let o = altinv(&["ztable", "--n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["relations"][2], "lambda2 = 2*lambda1 - 2");
    assert_eq!(v["z"][2], serde_json::json!(["-2", "2"]));
}

#[test]
fn trace_form_quadratic() {
    let o = altinv(&["trace-form", "--field", "f:7", "--poly", "X^2-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "<2,6>");
}

#[test]
fn sweep_json_rows() {
    let o = altinv(&["sweep", "--field", "f:5", "--max-n", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["discriminant"] == "square"));
    assert!(rows.iter().all(|r| r["divisible"] == true && r["taylor"] == true && r["relations"] == true));
    assert!(rows.iter().any(|r| r["instance"] == "[3,1]" && r["split_count"] == 2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(altinv(&["sweep", "--field", "f:2", "--max-n", "4"]).status.code(), Some(2));
    assert_eq!(altinv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(altinv(&["trace-form", "--field", "f:7", "--poly", "X^^2"]).status.code(), Some(2));
    assert_eq!(altinv(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn fixed_module_json() {
    let o = altinv(&["fixed-module", "--rank", "2", "--action", "a3", "--cutoff", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["generators"], serde_json::json!(["1", "e*x1 + e*x2 + x1*x2"]));
    assert_eq!(v["dimensions"], serde_json::json!([1, 1, 2, 2, 2, 2, 2]));
}

#[test]
fn torsors_listing() {
    let o = altinv(&["torsors", "--field", "f:3", "--n", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: u64 = v.as_array().unwrap().iter().map(|r| r["split_count"].as_u64().unwrap()).sum();
    assert_eq!(total, 5);
    assert!(v.as_array().unwrap().iter().all(|r| r["discriminant"] == "square"));
}

#[test]
fn factorize_and_sw() {
    let o = altinv(&["factorize", "-g", "2", "1 + x1 + x2 + x1*x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a0 = x1 + x2\na1 = x1*x2\n");
    let o = altinv(&["factorize", "-g", "3", "1 + e^2*x1 + x1*x2*x3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = altinv(&["sw", "-g", "2", "0", "x1", "x2", "x1 + x2"]);
    assert!(stdout(&o).contains("w2 = e*x1 + e*x2 + x1*x2"));
}

#[test]
fn verify_suite() {
    let o = altinv(&["verify", "appendixA"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checks passed"));
}

// printed literals parse back to the same value
#[test]
fn printed_forms_reparse() {
    use alt_invariants::fields::Field;
    use alt_invariants::witt::DiagonalForm;
    let o = altinv(&["trace-form", "--field", "f:5", "--poly", "X^3 + 3*X + 3", "--poly", "X"]);
    let text = stdout(&o);
    let field = Field::parse("f:5").unwrap();
    let q = DiagonalForm::parse(&field, text.trim()).unwrap();
    assert_eq!(q.to_string(), text.trim());
}
