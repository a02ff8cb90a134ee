use cartcode_web::{params, spectrum, witness};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn params_matches_closed_forms() {
    let v = parse(params("3^1", "0,1,2;0,1,2", 2).unwrap());
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["min_distance"], 3);
    assert_eq!(v["second_weight"], 4);
    assert_eq!(v["second_weight_regime"], "Thm2");
}

#[test]
fn spectrum_agrees_with_formulas() {
    let v = parse(spectrum("2^2", "0,1,2;0,1,2,3", 2, 1_000_000).unwrap());
    assert_eq!(v["min_distance"], v["formula_min_distance"]);
    assert_eq!(v["second_weight"], 6);
    assert_eq!(v["formula_second_weight"], 6);
    let total: u64 = v["counts"].as_array().unwrap().iter().map(|p| p[1].as_u64().unwrap()).sum();
    assert_eq!(total, 4u64.pow(6));
}

#[test]
fn spectrum_respects_budget() {
    let err = spectrum("5^1", "0,1,2,3,4;0,1,2,3,4", 4, 1000).unwrap_err();
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn witness_weights_equal_formulas() {
    let v = parse(witness("5^1", "0,1,2,3;0,1,2,3,4", 3).unwrap());
    for w in v.as_array().unwrap() {
        assert_eq!(w["weight"], w["formula"]);
    }
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn bad_input_is_reported() {
    assert!(params("6^1", "0,1", 1).unwrap_err().contains("not prime"));
    assert!(params("3^1", "0;;1", 1).is_err());
    assert!(witness("3^1", "0,1,2;0,1,2", 5).is_err());
}
