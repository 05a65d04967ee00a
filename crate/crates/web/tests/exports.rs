use serde_json::Value;

#[test]
fn symbol_matches_cli_examples() {
    assert_eq!(recouple_web::symbol("6j", "0 1 1 0 1 1").unwrap(), "1/3\t0.3333333333333333");
    assert!(recouple_web::symbol("cg", "1/2 1/2 1/2 -1/2 0 0").unwrap().starts_with("+(1/1)·sqrt(1/2)\t0.7071"));
    assert!(recouple_web::symbol("6j", "0 1").is_err());
    assert!(recouple_web::symbol("12j", "0").is_err());
}

#[test]
fn two_electron_breakdown() {
    let v: Value = serde_json::from_str(&recouple_web::two_electron(1, 1, 1, 1, 0).unwrap()).unwrap();
    assert_eq!(v["forms_agree"], true);
    let lambdas: Vec<i64> = v["terms"].as_array().unwrap().iter().map(|t| t["lambda"].as_i64().unwrap()).collect();
    assert_eq!(lambdas, [0, 2]);
    // parity forbids every multipole
    let v: Value = serde_json::from_str(&recouple_web::two_electron(1, 0, 0, 0, 1).unwrap()).unwrap();
    assert!(v["terms"].as_array().unwrap().is_empty());
}

#[test]
fn orbital_curve_and_slater() {
    let v: Value = serde_json::from_str(&recouple_web::orbital(1, 0, 2.0, 10.0, 101).unwrap()).unwrap();
    assert_eq!(v["r"].as_array().unwrap().len(), 101);
    let f0 = v["slater"][0][1].as_f64().unwrap();
    assert!((f0 - 1.25).abs() < 1e-8);
    assert!(recouple_web::orbital(1, 1, 1.0, 10.0, 10).is_err());
}
