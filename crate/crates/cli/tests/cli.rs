use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use slicekit::diagram::switch_crossing;
use slicekit::fixtures::lookup;

fn slicekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicekit"))
        .args(args)
        .output()
        .expect("running slicekit")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = slicekit(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout_ok(&all)).unwrap()
}

const REPORT_FIELDS: [&str; 15] = [
    "name",
    "determinant",
    "determinant_is_square",
    "alexander",
    "milnor_fox",
    "signature",
    "tl_vanishes",
    "h1",
    "gram",
    "cone_size",
    "theorem1_case",
    "metabolizer",
    "livingston_naik",
    "rb_best",
    "verdict",
];

#[test]
fn sum_json_uses_report_field_names() {
    let r = json(&["sum", "3_1"]);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = REPORT_FIELDS.to_vec();
    expected.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
    assert_eq!(r["determinant"], 3);
    assert_eq!(r["alexander"], "(1 [-1] 1)");
    assert_eq!(r["gram"], "group=[3] gram=[[1/3]]");
    assert_eq!(r["signature"], 2);
    assert_eq!(r["rb_best"], 1);
    assert_eq!(r["verdict"]["kind"], "slice-obstructed");
    assert_eq!(r["verdict"]["reasons"].as_array().unwrap().len(), 6);
}

#[test]
fn sum_of_knot_and_inverse_is_unobstructed() {
    let r = json(&["sum", "6_1", "!6_1"]);
    assert_eq!(r["name"], "6_1#!6_1");
    assert_eq!(r["determinant"], 81);
    assert_eq!(r["verdict"]["kind"], "no-obstruction-found");
    assert_eq!(r["metabolizer"]["order"], 9);
}

#[test]
fn bound_marks_skipped_fields() {
    let r = json(&["--bound", "5", "sum", "3_1", "3_1"]);
    assert_eq!(r["cone_size"], "skipped (bound)");
    assert_eq!(r["metabolizer"], "skipped (bound)");
    assert_eq!(r["theorem1_case"], "skipped (bound)");
}

#[test]
fn analyze_keeps_order_and_reports_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("knots.txt");
    fs::write(
        &file,
        "# sample\ntrefoil\tdt:4 6 2\nbroken\tpd:X(1,2\nfigure8\tdt:4 6 8 2\n",
    )
    .unwrap();
    let path = file.to_str().unwrap();
    let entries = json(&["analyze", path]);
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["name"], "trefoil");
    assert_eq!(entries[0]["determinant"], 3);
    assert_eq!(entries[1]["name"], "broken");
    assert_eq!(entries[1]["line"], 3);
    assert!(entries[1]["error"].is_string());
    assert_eq!(entries[2]["name"], "figure8");
    assert_eq!(entries[2]["determinant"], 5);

    let text = stdout_ok(&["analyze", path]);
    assert!(text.contains("reports: 2, errors: 1, obstructed: 2"));

    let out = slicekit(&["--csv", "analyze", path]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        REPORT_FIELDS.to_vec()
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][0], "figure8");
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn empty_knot_list() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.txt");
    fs::write(&file, "").unwrap();
    let entries = json(&["analyze", file.to_str().unwrap()]);
    assert_eq!(entries, Value::Array(vec![]));
}

#[test]
fn fixtures_directory_overrides_tables() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("mine.txt"), "tref\tdt:4 6 2\n").unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = json(&["--fixtures", d, "rb", "tref"]);
    let mirrored = json(&["--fixtures", d, "rb", "!tref"]);
    assert_eq!(
        plain["diagram"]["writhe"],
        -mirrored["diagram"]["writhe"].as_i64().unwrap()
    );
    let out = slicekit(&["--fixtures", d, "rb", "3_1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown knot"));
}

#[test]
fn form_cone_and_metabolizer() {
    let doubled = "group=[21,21] gram=[[2/21,0],[0,2/21]]";
    let f = json(&["form", doubled]);
    assert_eq!(f["order"], 441);
    assert_eq!(f["nondegenerate"], true);
    assert_eq!(f["livingston_naik"], Value::Null);
    let c = json(&["cone", doubled]);
    assert_eq!(c["cone_size"], 1);
    assert_eq!(c["theorem1_case"], "a");
    let m = json(&["metabolizer", doubled]);
    assert_eq!(m["metabolizer"], Value::Null);

    let m = json(&["metabolizer", "group=[9]", "gram=[[2/9]]"]);
    assert_eq!(m["metabolizer"]["order"], 3);
    let c = json(&["cone", "group=[5,5] gram=[[1/5,0],[0,1/5]]"]);
    assert_eq!(c["cone_size"], 9);
    assert_eq!(c["cone"].as_array().unwrap().len(), 9);

    let text = stdout_ok(&["form", "group=[3]", "gram=[[1/3]]"]);
    assert!(text.contains("livingston_naik: applies (p = 3)"));
    let bad = slicekit(&["form", "group=[4] gram=[[1/4]]"]);
    assert!(!bad.status.success());
}

#[test]
fn homfly_and_morton_bound() {
    let h = json(&["homfly", "3_1"]);
    assert_eq!(h["homfly"], "-2l^2 - l^4 + l^2m^2");
    assert_eq!(h["l_min"], 2);
    assert_eq!(h["delta"], 2);
    assert_eq!(h["alexander"], "(1 [-1] 1)");
    assert_eq!(h["morton_bound_holds"], true);
    let h = json(&["homfly", "4_1"]);
    assert_eq!(h["homfly"], "-l^-2 - 1 - l^2 + m^2");
}

#[test]
fn rb_of_figure_knot() {
    let r = json(&["rb", "12_1609"]);
    assert_eq!(r["diagram"]["b"], 2);
    assert_eq!(r["diagram"]["rb"], 2);
    let r = json(&["rb", "dt:4 6 2"]);
    assert_eq!(r["name"], "dt:4 6 2");
}

#[test]
fn signature_function_arcs() {
    let s = json(&["signature", "3_1"]);
    assert_eq!(s["signature"], 2);
    let arcs = s["function"]["plateaus"].as_array().unwrap();
    let values: Vec<i64> = arcs.iter().map(|a| a["value"].as_i64().unwrap()).collect();
    assert_eq!(values, vec![0, 2]);
    assert_eq!(s["function"]["jump_angles"].as_array().unwrap().len(), 1);
}

#[test]
fn milnor_fox_literal() {
    let m = json(&["milnor-fox", "(-2 [5] -2)"]);
    assert_eq!(m["determinant"], "9");
    assert!(m["milnor_fox"].is_string());
    let m = json(&["milnor-fox", "(1 [-3] 1)"]);
    assert_eq!(m["milnor_fox"], Value::Null);
    let text = stdout_ok(&["milnor-fox", "(1 [-1] 1)"]);
    assert!(text.contains("unit circle roots: 2"));
}

#[test]
fn indirect_rb_through_switched_crossing() {
    let base = switch_crossing(&lookup("12_1609").unwrap(), 0).unwrap();
    let code = format!("pd:{}", base.to_pd_string());
    let r = json(&["indirect-rb", &code, "0", "12_1609"]);
    assert_eq!(r["neighbor_rb"], 2);
    assert_eq!(r["bound"], 1);
    assert_eq!(r["not_smoothly_slice"], true);
    let wrong = slicekit(&["indirect-rb", &code, "0", "3_1"]);
    assert!(!wrong.status.success());
    assert!(String::from_utf8_lossy(&wrong.stderr).contains("does not match"));
}

#[test]
fn trivial_cone_classification_sweep() {
    let s = json(&["classify-trivial-cone", "300"]);
    assert_eq!(s["groups"], 45);
    assert_eq!(s["disagreements"], Value::Array(vec![]));
}

#[test]
fn conflicting_output_flags() {
    let out = slicekit(&["--json", "--csv", "sum", "3_1"]);
    assert!(!out.status.success());
    let out = slicekit(&["--csv", "homfly", "3_1"]);
    assert!(!out.status.success());
}
