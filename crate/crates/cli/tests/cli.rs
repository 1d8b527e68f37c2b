use std::process::{Command, Output};

use serde_json::Value;

fn divfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divfield")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = divfield(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out).trim_end().to_string()
}

#[test]
fn element_operations() {
    assert_eq!(ok(&["mul", "1 + x + O(x^4)", "1 + x^(1/2) + O(x^4)"]), "1 + x^(1/2) + x^(1) + x^(3/2) + O(x^(4))");
    assert_eq!(ok(&["inv", "1 + x + x^2 + O(x^4)"]), "1 + x^(1) + x^(3) + O(x^(4))");
    assert_eq!(ok(&["pow", "1 + x + O(x^6)", "5"]), "1 + x^(1) + x^(4) + x^(5) + O(x^(6))");
    assert_eq!(ok(&["pow", "x * 1 + O(x^2)", "-2"]), "x^(-2) * 1 + O(x^(2))");
    assert_eq!(ok(&["root", "1 + x + O(x^3)", "3"]), "1 + x^(1) + x^(2) + O(x^(3))");
    assert_eq!(ok(&["root", "1 + x + O(x^3)", "6"]), "1 + x^(1/2) + x^(1) + O(x^(3/2))");
    assert_eq!(ok(&["scalar-mul", "1/2", "1 + x + O(x^4)"]), "1 + x^(1/2) + O(x^(2))");
    assert_eq!(ok(&["scalar-mul", "2/3", "x^(1/2) * 1 + x + O(x^3)"]), "x^(1/3) * 1 + x^(2) + O(x^(3))");
    assert_eq!(ok(&["scalar-mul", "-1", "x * 1 + O(x^3)"]), "x^(-1) * 1 + O(x^(3))");
    assert_eq!(ok(&["compose", "-5/3", "1 + x^(1/3) + O(x^2)"]), "x^(-5/3) * 1 + x^(1/3) + O(x^(2))");
    assert_eq!(
        ok(&["decompose", "x^(1/2) + x + x^(3/2) + O(x^3)"]),
        "val: 1/2\nunit: 1 + x^(1/2) + x^(1) + O(x^(5/2))"
    );
}

#[test]
fn records_have_stable_field_order() {
    let line = ok(&["--format", "records", "mul", "1 + O(x)", "1 + x + O(x^2)"]);
    assert!(line.starts_with(r#"{"op":"mul","input":["1 + O(x)","1 + x + O(x^2)"],"output":"#), "{line}");
    let v: Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["output"], "1 + O(x^(1))");

    let line = ok(&["decompose", "--format", "records", "x^(1/2) + O(x^3)"]);
    let v: Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["output"]["val"], "1/2");
    assert_eq!(v["output"]["unit"], "1 + O(x^(5/2))");
}

#[test]
fn errors_are_one_line_and_nonzero() {
    for args in [
        &["mul", "1 + x + O(x^2", "1 + O(x)"][..],
        &["inv", "x^(1/2) + O(x^(1/4))"],
        &["inv", "1 + x^2 + x + O(x^3)"],
        &["root", "1 + x^(1/8) + O(x)", "2", "--den-cap", "8"],
        &["root", "1 + x + O(x)", "0"],
        &["scalar-mul", "1/0", "1 + O(x)"],
        &["axioms", "--aprec", "-1"],
        &["fq-scan", "--max", "2000000", "--oracle"],
        &["pow", "1 + O(x)"],
        &["frobnicate"],
    ] {
        let out = divfield(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} printed a partial result");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn errors_in_record_mode_carry_the_error_field() {
    let out = divfield(&["--format", "records", "root", "1 + x^(1/8) + O(x)", "2", "--den-cap", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["op"], "root");
    assert!(v["error"].as_str().unwrap().contains("cap 8"));
    assert!(v.get("output").is_none());
}

#[test]
fn checks_report_and_exit_zero() {
    let text = ok(&["axioms", "--samples", "50", "--aprec", "32"]);
    assert!(text.contains("r(ab) = ra*rb"));
    assert!(text.ends_with("total failures: 0"));

    let line = ok(&["--format", "records", "torsion", "--samples", "20", "--nmax", "20", "--aprec", "16"]);
    let v: Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["op"], "torsion");
    assert_eq!(v["output"]["results"][0]["failures"], 0);

    let text = ok(&["bijectivity", "--samples", "10", "--kmax", "12", "--aprec", "24"]);
    assert!(text.ends_with("total failures: 0"));
}

#[test]
fn fq_scan_table_and_records() {
    let table = ok(&["fq-scan", "--max", "40", "--oracle"]);
    let lines: Vec<&str> = table.lines().collect();
    assert!(lines[0].split_whitespace().eq(["q", "p", "n", "theorem", "oracle"]));
    assert!(lines.iter().any(|l| l.split_whitespace().take(3).eq(["9", "3", "2"]) && l.contains("no")));
    assert!(lines.last().unwrap().contains("yes for q in {2, 3, 4, 8, 32}; oracle disagreements: 0"));

    let records = ok(&["--format", "records", "fq-scan", "--max", "200"]);
    let yes: Vec<u64> = records
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v["output"]["theorem"]["answer"] == "yes")
        .map(|v| v["input"]["q"].as_u64().unwrap())
        .collect();
    assert_eq!(yes, vec![2, 3, 4, 8, 32, 128]);
}
