use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn ghcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghcat")).args(args).output().expect("spawn ghcat")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

fn export(name: &str, dir: &Path) -> String {
    let p = dir.join(format!("{name}.json"));
    let p = p.to_str().unwrap().to_string();
    let out = ghcat(&["catalog", "export", name, "--out", &p]);
    assert!(out.status.success());
    p
}

#[test]
fn every_catalog_export_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let list = json_of(&ghcat(&["catalog", "list"]));
    for e in list.as_array().unwrap() {
        let name = e["name"].as_str().unwrap();
        let p = export(name, dir.path());
        let out = ghcat(&["verify", &p, "--tol", "1e-9"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn perturbed_solution_fails_verification_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = export("Z3-haagerup", dir.path());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let re = &mut v["A"][0][0][0]["re"];
    *re = serde_json::json!(re.as_f64().unwrap() + 1e-3);
    std::fs::write(&p, v.to_string()).unwrap();
    let out = ghcat(&["verify", &p, "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_group_of_z2x2_is_a4() {
    let dir = tempfile::tempdir().unwrap();
    let p = export("Z2x2", dir.path());
    let v = json_of(&ghcat(&["out-group", &p]));
    assert_eq!(v["stabilizer_order"], 12);
    assert_eq!(v["name"], "A4");
}

#[test]
fn classify_z3_reports_two_classes_and_is_seed_stable() {
    let a = json_of(&ghcat(&["classify", "--group", "3", "--seed", "7"]));
    assert_eq!(a["class_count"], 2);
    let b = json_of(&ghcat(&["classify", "--group", "3", "--seed", "7"]));
    assert_eq!(a, b);
}

#[test]
fn group_order_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ghcat"))
        .args(["classify", "--group", "3"])
        .env("GHC_MAX_GROUP_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ghcat(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(ghcat(&["classify", "--group", "x,y"]).status.code(), Some(2));
    assert_eq!(ghcat(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(ghcat(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn accompany_round_trip_and_formal_verify() {
    let dir = tempfile::tempdir().unwrap();
    let p = export("Z3-haagerup", dir.path());
    let acc = dir.path().join("acc.json");
    let acc = acc.to_str().unwrap();
    assert!(ghcat(&["accompany", &p, "--out", acc]).status.success());
    let v = json_of(&ghcat(&["verify", acc, "--formal"]));
    assert_eq!(v["q1"], false);
    assert_eq!(v["formal"]["passes"], true);
}

#[test]
fn orbifold_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = export("Z4-qsystem", dir.path());
    let d = json_of(&ghcat(&["deq", &z4, "--z", "2"]));
    assert_eq!(d["q_system_preserved"], true);
    let z22 = export("Z2x2", dir.path());
    let e = json_of(&ghcat(&["eqv", &z22, "--aut", "0,2,3,1"]));
    assert_eq!(e["q_system_preserved"], true);
    let g = json_of(&ghcat(&["dual-graph", "--group", "2,2"]));
    assert_eq!(g["j1_count"], 0);
}
