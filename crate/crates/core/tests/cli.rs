use std::process::{Command, Output};

use nilalg::bounds::{best_bounds, BoundFlags};
use nilalg::field::FieldTag;
use nilalg::{FormalSum, NilIdeal, PartialOrderKind};
use serde_json::Value;

fn nilalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilalg"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = nilalg(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exact_reports_degree_and_witness() {
    let v = json(&[
        "exact",
        "--n",
        "3",
        "--d",
        "2",
        "--p",
        "3",
        "--max-deg",
        "9",
    ]);
    assert_eq!(v["degree"], 7);
    assert_eq!(
        v["witness"]
            .as_str()
            .unwrap()
            .parse::<nilalg::Word>()
            .unwrap()
            .len(),
        6
    );
    let v = json(&["exact", "--n", "3", "--d", "2", "--max-deg", "4"]);
    assert_eq!(v["degree"], "exceeds max_deg");
}

#[test]
fn verdicts_match_the_library() {
    let expr = "x1^3.x2.x1^3";
    let v = json(&["member", "--n", "4", "--p", "0", "--expr", expr]);
    let ideal = NilIdeal::new(4, 0).unwrap();
    let f = FormalSum::parse(FieldTag::Rational, expr).unwrap();
    assert_eq!(v["member"], ideal.contains(&f).unwrap());
    assert_eq!(v["normal_form"], "0");

    let expr = "x1.x2.x1^2 + x1^2.x2.x1";
    let v = json(&["equiv", "--n", "4", "--order", "succ", "--expr", expr]);
    let f = FormalSum::parse(FieldTag::Rational, expr).unwrap();
    assert_eq!(
        v["holds"],
        ideal.equiv_zero(&f, PartialOrderKind::Succ).unwrap()
    );
    assert_eq!(v["holds"], true);
}

#[test]
fn bounds_json_round_trips() {
    let v = json(&["bounds", "--n", "30", "--d", "2", "--p", "17", "--json"]);
    let s = best_bounds(30, 2, 17, BoundFlags::default()).unwrap();
    assert_eq!(
        v["best_upper"]["integer_bound"],
        s.best_upper.integer_bound.unwrap().to_string()
    );
    assert_eq!(v["best_lower"]["formula_id"], s.best_lower.formula_id);
    assert_eq!(v["all"].as_array().unwrap().len(), s.all.len());
    let csv = nilalg(&["bounds", "--n", "30", "--d", "2", "--p", "17", "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), s.all.len() + 1);
}

#[test]
fn reduce4_prints_the_combination() {
    let v = json(&["reduce4", "--expr", "x1^2.x2.x1^2"]);
    assert_eq!(v["canonical"], "-x1^3.x2.x1 - x1.x2.x1^3");
}

#[test]
fn compare_minimum() {
    let v = json(&["compare", "--n-min", "4", "--n-max", "2000", "--json"]);
    assert!(v["min_gap_log10"].as_f64().unwrap() >= 20.0);
}

#[test]
fn invariants_report_shape() {
    let v = json(&[
        "invariants",
        "gen-check",
        "--n",
        "2",
        "--d",
        "2",
        "--p",
        "0",
        "--extra-deg",
        "1",
    ]);
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        assert!(c["t"].is_u64() && c["word"].is_string() && c["deg"].is_u64());
        assert_eq!(c["pass"], true);
    }
    assert_eq!(v["summary"]["all_pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        nilalg(&["exact", "--n", "2", "--d", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        nilalg(&["exact", "--n", "2", "--d", "2", "--p", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nilalg(&["exact", "--n", "2", "--frobnicate"]).status.code(),
        Some(2)
    );
    assert_eq!(
        nilalg(&["member", "--n", "2", "--expr", "x1 +"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nilalg(&["reduce4", "--p", "2", "--expr", "x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nilalg(&["exact", "--n", "3", "--d", "2", "--limit-rows", "5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "exact",
        "--n",
        "3",
        "--d",
        "2",
        "--p",
        "2",
        "--max-deg",
        "8",
        "--threads",
        "3",
    ];
    assert_eq!(nilalg(&args).stdout, nilalg(&args).stdout);
    let args2 = [
        "exact",
        "--n",
        "3",
        "--d",
        "2",
        "--p",
        "2",
        "--max-deg",
        "8",
        "--threads",
        "1",
    ];
    assert_eq!(nilalg(&args).stdout, nilalg(&args2).stdout);
}

#[test]
fn reads_expressions_from_files() {
    let dir = std::env::temp_dir().join(format!("nilalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "x1.x2 + x2.x1\n").unwrap();
    let v = json(&["member", "--n", "2", "--file", path.to_str().unwrap()]);
    assert_eq!(v["member"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
