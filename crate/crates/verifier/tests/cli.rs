use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use steenrod_core::stable::StableClass;

fn steenrod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .env_remove("STEENROD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn arithmetic() {
    let o = steenrod(&["mul", "Sq(2)", "Sq(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Sq(1,1)");
    let o = steenrod(&["mul", "Sq(2)", "Sq(2)", "--algebra", "A:1//E:1"]);
    assert_eq!(stdout(&o).trim(), "0");
    assert_eq!(steenrod(&["mul", "Sq(4)", "Sq(4)", "--algebra", "A:1"]).status.code(), Some(2));
    let o = steenrod(&["--json", "comul", "Sq(1)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coproduct"], "1⊗Sq(1) + Sq(1)⊗1");
    assert_eq!(stdout(&steenrod(&["antipode", "Sq(2)"])).trim(), "Sq(2)");
}

#[test]
fn algebra_info() {
    let o = steenrod(&["--json", "algebra", "info", "A:2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 64);
    assert_eq!(v["top_degree"], 23);
    assert_eq!(v["top_class"], "Sq(7,3,1)");
    assert_eq!(stdout(&steenrod(&["algebra", "topclass", "E:1"])).trim(), "Sq(1,1)");
    assert_eq!(stdout(&steenrod(&["algebra", "basis", "A:1"])).lines().count(), 8);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(steenrod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(steenrod(&["mul", "Sq(2", "Sq(1)"]).status.code(), Some(2));
    assert_eq!(steenrod(&["algebra", "info", "Q:3"]).status.code(), Some(2));
    assert_eq!(steenrod(&["module", "isfree", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(steenrod(&["verify", "reduce-d", "--n", "3", "--i", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"algebra": "A:1", "basis": [["x", 0]], "action": {"Sq(1)": [[0, 0]]}}"#);
    assert_eq!(steenrod(&["module", "validate", &bad]).status.code(), Some(2));
}

#[test]
fn module_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let joker = stdout(&steenrod(&["module", "cyclic", "--algebra", "A:1", "--relator", "Sq(3)"]));
    let path = write(dir.path(), "joker.json", &joker);
    let o = steenrod(&["module", "validate", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), joker);

    let dual = stdout(&steenrod(&["module", "dual", &path]));
    let dpath = write(dir.path(), "dual.json", &dual);
    assert_eq!(stdout(&steenrod(&["module", "validate", &dpath])), dual);
    let t = stdout(&steenrod(&["module", "tensor", &path, &dpath]));
    let tpath = write(dir.path(), "end.json", &t);
    let m = stdout(&steenrod(&["module", "minrep", &tpath]));
    let v: Value = serde_json::from_str(&m).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn predicates_set_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let free = write(dir.path(), "f.json", &stdout(&steenrod(&["module", "free", "--algebra", "A:1", "--shifts", "0,2"])));
    let k = write(dir.path(), "k.json", &stdout(&steenrod(&["module", "trivial", "--algebra", "A:1"])));
    let o = steenrod(&["module", "isfree", &free]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "true".into()));
    let o = steenrod(&["module", "isfree", &k]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(1), "false".into()));
    assert_eq!(steenrod(&["module", "endotrivial", &k]).status.code(), Some(0));
    assert_eq!(steenrod(&["module", "endotrivial", &free]).status.code(), Some(1));
    let om = write(dir.path(), "om.json", &stdout(&steenrod(&["module", "omega", &k])));
    let back = write(dir.path(), "back.json", &stdout(&steenrod(&["module", "omega", "--inverse", &om])));
    let o = steenrod(&["module", "stably-iso", &back, &k]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "yes".into()));
    assert_eq!(steenrod(&["module", "stably-iso", &om, &k]).status.code(), Some(1));
}

#[test]
fn restriction_and_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let free = write(dir.path(), "f.json", &stdout(&steenrod(&["module", "free", "--algebra", "A:1"])));
    let r = stdout(&steenrod(&["module", "restrict", &free, "--to", "E:1"]));
    let rpath = write(dir.path(), "r.json", &r);
    assert_eq!(steenrod(&["module", "isfree", &rpath]).status.code(), Some(0));
    let inv: Value = serde_json::from_str(&stdout(&steenrod(&["module", "invariants", &free, "--sub", "E:1"]))).unwrap();
    assert_eq!(inv["algebra"], "A:1//E:1");
    assert_eq!(inv["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn picard_output_reloads() {
    let o = steenrod(&["picard", "--algebra", "A:1", "--m", "2", "--l", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let c = StableClass::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.provenance, Some((2, -1)));
}

fn without_timings(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timings_ms");
    v
}

#[test]
fn verify_reports_are_deterministic_and_consistent() {
    let args = ["--json", "verify", "detection-corpus", "--n", "1", "--seed", "7"];
    let (a, b) = (steenrod(&args), steenrod(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timings(&stdout(&a)), without_timings(&stdout(&b)));
    let json = without_timings(&stdout(&a));
    assert_eq!(json["verdict"], "pass");
    assert!(!json["digests"].as_object().unwrap().is_empty());
    let text = stdout(&steenrod(&["verify", "detection-corpus", "--n", "1", "--seed", "7"]));
    assert!(text.lines().last().unwrap().starts_with("pass: "));
    let other = without_timings(&stdout(&steenrod(&["--json", "verify", "detection-corpus", "--n", "1", "--seed", "8"])));
    assert_ne!(json["digests"], other["digests"]);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(steenrod(&["verify", "doubling", "--n", "2"]).status.code(), Some(0));
    // Ω^{±2}k over A(2) needs more than 100 dimensions: reported, never a pass.
    let o = steenrod(&["--json", "verify", "picard-generators", "--n", "2", "--max-dim", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "incomplete");
}

#[test]
fn cache_dir_receives_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(["verify", "picard-generators", "--n", "1", "--bound", "1"])
        .env("STEENROD_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 9);
}
