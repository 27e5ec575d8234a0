use a2kt::presentation::builtin_text;
use a2kt_web::{ktheory_json, smith_json, transition_json};
use serde_json::Value;

#[test]
fn ktheory_of_a_builtin() {
    let v: Value =
        serde_json::from_str(&ktheory_json(builtin_text("B.2").unwrap()).unwrap()).unwrap();
    assert_eq!(v["torsion_primary"], "(Z/2)^2 + Z/3");
    assert_eq!(v["identity_order"], 1);
}

#[test]
fn smith_of_pasted_text() {
    let v: Value =
        serde_json::from_str(&smith_json("2 2\n0 0 2\n0 1 4\n1 0 6\n1 1 8\n").unwrap()).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
    assert_eq!(v["cokernel"]["text"], "Z/2 + Z/4");
    assert!(smith_json("2 2\n5 0 1\n").is_err());
}

#[test]
fn transition_cells() {
    let v: Value =
        serde_json::from_str(&transition_json(builtin_text("C.1").unwrap(), "hat1").unwrap())
            .unwrap();
    assert_eq!(v["size"], 21);
    assert_eq!(v["letters"].as_array().unwrap().len(), 21);
    assert_eq!(v["cells"].as_array().unwrap().len(), 84);
    assert!(transition_json(builtin_text("C.1").unwrap(), "hat9").is_err());
    assert!(ktheory_json("q 2\n").is_err());
}
