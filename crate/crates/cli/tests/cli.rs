use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagmut")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mutate_returns_the_laurent_potential() {
    let out = run(&["mutate", "--potential", &data("w.json"), "--rule", &data("rule.json"), "--at", &data("point.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["is_laurent"], true);
    // x2 + x1·x2 + 1/x2 becomes x2 + (1 + x1)/x2; at (1, 2) that is 3.
    assert_eq!(v["at"]["re"], "3/1");
    assert_eq!(v["laurent"]["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_and_missing_inputs_exit_one() {
    let out = run(&["mutate", "--potential", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 1 column"), "{msg}");
    assert_eq!(run(&["mutate", "--potential", &data("missing.json")]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["isotopy", "--g0", &data("upper.json"), "--g1", &data("upper.json"), "--n", "2", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn validation_failures_exit_two() {
    let out = run(&["broken", "validate", "--type", &data("bad_type.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["violations"][0].as_str().unwrap().contains("asymptote mismatch"));
    let out = run(&["admissible", "--path", &data("upper.json"), "--n", "2", "--t", "2", "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["ok"], false);
}

#[test]
fn numeric_errors_exit_three() {
    let out = run(&["elementary", "eval", "--n", "2", "--eps", "0.5", "--side", "upper", "--z", "1,-1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["integrate", "--n", "2", "--path", &data("circle.json"), "--about", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn geometry_commands() {
    let out = run(&["integrate", "--n", "3", "--path", &data("circle.json"), "--about", "0,0"]);
    let v = json_of(&out);
    assert!((v["integral"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-8);
    assert_eq!(v["winding"], 1);
    let out = run(&["mutation-pair", "--c", &data("upper.json"), "--c-prime", &data("lower.json"), "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["area_defect"].as_f64().unwrap().abs() < 1e-9);
    let out = run(&["isotopy", "--g0", &data("upper.json"), "--g1", &data("lower.json"), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = run(&["integrate", "--n", "4", "--delta-f", "0", "--scale", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "{\"area\":7.8539816339744828e-1}");
}

#[test]
fn index_and_elementary_commands() {
    let v = json_of(&run(&["index", "--data", &data("index.json"), "--k", "1", "--classes", &data("classes.json")]));
    assert_eq!(v["disc_index"], 4);
    assert_eq!(v["split_indices"]["vertical"].as_i64().unwrap() + v["split_indices"]["horizontal"].as_i64().unwrap(), 4);
    assert_eq!(v["monotonicity"]["constant"], "1/2");
    let out = run(&["elementary", "verify", "--n", "3", "--eps", "0.5", "--side", "lower", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["cr_residual"].as_f64().unwrap() < 1e-8 && v["valid"] == true);
    assert_eq!(json_of(&run(&["elementary", "count", "--side", "lower", "--n", "5"]))["count"], 5);
    assert_eq!(json_of(&run(&["elementary", "chord", "--sign", "+", "--l", "2"]))["end"], "+");
    assert_eq!(json_of(&run(&["elementary", "witness", "--n", "6"]))["index"], 7);
}

#[test]
fn floer_commands_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("lagmut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let complex = dir.join("complex.json");
    let out = run(&[
        "floer", "fixture", "--generators", "4", "--rank-l", "2", "--rank-k", "2", "--seed", "3",
        "--output", complex.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = complex.to_str().unwrap();
    assert_eq!(run(&["floer", "check", "--complex", c]).status.code(), Some(0));
    let assign = dir.join("assign.json");
    std::fs::write(
        &assign,
        r#"{"z1": {"re": "2", "im": "1"}, "z2": {"re": "-3/2"}, "w1": {"re": "5"}, "w2": {"re": "1/3", "im": "2"}}"#,
    )
    .unwrap();
    let rule = dir.join("rule.json");
    std::fs::write(&rule, r#"{"n": 2, "mutated": "z2", "fiber": ["z1"]}"#).unwrap();
    let a = assign.to_str().unwrap();
    let before = json_of(&run(&["floer", "rank", "--complex", c, "--assign", a]));
    let after = json_of(&run(&["floer", "rank", "--complex", c, "--assign", a, "--rule", rule.to_str().unwrap()]));
    assert_eq!(before, after);
    assert_eq!(before["hf_dim"].as_u64().unwrap() % 2, 0);
    let m = json_of(&run(&["floer", "mutate", "--complex", c, "--rule", rule.to_str().unwrap()]));
    assert_eq!(m["matrix"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn broken_enumeration_is_deterministic() {
    let args = ["broken", "enumerate", "--n", "2", "--max-levels", "3", "--max-components", "2", "--max-multiplicity", "2", "--max-punctures", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    for row in v["table"].as_array().unwrap() {
        if row["status"] == "Rigid" {
            assert_eq!(row["levels"], 2);
        }
    }
    let v = json_of(&run(&["broken", "classify", "--type", &data("type.json"), "--n", "2"]));
    assert_eq!(v["status"], "Rigid");
    assert_eq!(json_of(&run(&["broken", "dim", "--type", &data("type.json"), "--n", "3"]))["dimension"], -1);
}
