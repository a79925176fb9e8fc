use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legcap")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dga", &corpus("unknot.json")]).status.code(), Some(0));
    assert_eq!(run(&["dga", "/nonexistent/front.json"]).status.code(), Some(1));
    assert_eq!(run(&["dga", &corpus("manifest.json")]).status.code(), Some(1));
    assert_eq!(run(&["dga", &corpus("bad-heights.json")]).status.code(), Some(2));
    assert_eq!(run(&["capacity", &corpus("unknot.json"), "--marked-arc", "9"]).status.code(), Some(1));
    assert_eq!(run(&["capacity", &corpus("trefoil.json"), "--augmentation", "5"]).status.code(), Some(1));
    assert_eq!(run(&["--max-deg0", "2", "augmentations", &corpus("trefoil.json")]).status.code(), Some(3));
}

#[test]
fn filtration_error_names_the_chord() {
    let out = run(&["dga", &corpus("bad-heights.json")]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("a1"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn dga_json_lists_chords() {
    let doc = json(&["dga", &corpus("trefoil.json"), "--oracle"]);
    assert_eq!(doc["chords"].as_array().unwrap().len(), 5);
    assert_eq!(doc["oracle"], "agree");
}

#[test]
fn trefoil_capacities() {
    let doc = json(&["capacity", &corpus("trefoil.json"), "--all-augmentations", "--marked-arc", "all", "--oracle"]);
    let rows = doc["augmentations"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["capacity"] == "1"));
    assert_eq!(doc["c_min"], "1");
    assert_eq!(doc["c_max"], "1");

    let one = json(&["capacity", &corpus("trefoil.json"), "--augmentation", "3"]);
    assert_eq!(one["augmentations"][0]["index"], 3);
    assert_eq!(one["augmentations"][0]["augmentation"], serde_json::json!([1, 1, 0]));
}

#[test]
fn lch_betti_numbers() {
    let doc = json(&["lch", &corpus("trefoil.json")]);
    for row in doc["augmentations"].as_array().unwrap() {
        assert_eq!(row["betti"]["1"], 1, "{row}");
        assert_eq!(row["betti"]["0"], 2, "{row}");
    }
}

#[test]
fn width_levels() {
    let doc = json(&["width", &corpus("unknot-r7_3.json"), "--level", "-ln(2)"]);
    assert_eq!(doc["width"]["exact"], "7/3");
    let doc = json(&["width", &corpus("unknot.json"), "--level", "1"]);
    assert_eq!(doc["width"]["lower"].as_str().unwrap(), "5.43656365692");
    let doc = json(&["width", &corpus("trefoil.json"), "--level", "-1"]);
    assert_eq!(doc["width"]["exact"], "0.735758882343");
    let gap = json(&["width", &corpus("gap-example.json"), "--collared"]);
    assert_eq!(gap["width"]["lower"], "1/4");
    assert_eq!(gap["width"]["upper_min_aug"], "2");
    assert!(gap["width"].get("exact").is_none());
    assert!(gap.get("collared_top").is_some());
}

#[test]
fn length_is_clamped_at_zero() {
    let doc = json(&["length", &corpus("unknot.json"), &corpus("unknot-r2.json")]);
    let bound = &doc["length_bounds"][0];
    assert_eq!(bound["value"], "0");
    assert_eq!(bound["clamped"], true);
}

#[test]
fn corpus_verify_passes() {
    let out = run(&["corpus-verify", "--dir", &corpus("")]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
