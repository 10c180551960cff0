//! End-to-end checks of the binary: exit codes, JSON shapes, and
//! byte-for-byte determinism.

use std::process::{Command, Output};

fn gfcaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfcaps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn verify_pass_cases() {
    let out = gfcaps(&["verify", "--p", "3", "--n", "4", "--d", "20"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("result: PASS"));

    let out = gfcaps(&["verify", "--p", "3", "--n", "5", "--d", "22", "--complete"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("methods agree"));
}

#[test]
fn verify_failure_reports_witness_and_exits_one() {
    let out = gfcaps(&["verify", "--p", "3", "--n", "4", "--d", "80"]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("cap: NO"));
    assert!(text.contains("witness"));

    let out = gfcaps(&[
        "verify", "--p", "3", "--n", "4", "--d", "80", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 1);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["cap"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_and_config_errors_exit_two() {
    // 7 does not divide 80
    let out = gfcaps(&["verify", "--p", "3", "--n", "4", "--d", "7"]);
    assert_eq!(exit_code(&out), 2);

    // reducible modulus
    let out = gfcaps(&[
        "verify", "--p", "2", "--n", "2", "--modulus", "x^2+1", "--d", "3",
    ]);
    assert_eq!(exit_code(&out), 2);

    // missing required option
    let out = gfcaps(&["scan"]);
    assert_eq!(exit_code(&out), 2);

    // unknown flag is rejected by the parser
    let out = gfcaps(&["scan", "--p", "3", "--n", "1", "--bogus"]);
    assert_eq!(exit_code(&out), 2);

    // unknown deck
    let out = gfcaps(&["tables", "tarot"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_json_rows() {
    let out = gfcaps(&["scan", "--p", "2", "--n", "6", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let row9 = rows.iter().find(|r| r["d"] == 9).unwrap();
    assert_eq!(row9["is_cap"], true);
    assert_eq!(row9["complete"], true);
    let row63 = rows.iter().find(|r| r["d"] == 63).unwrap();
    assert_eq!(row63["is_cap"], false);
    assert_eq!(row63["complete"], serde_json::Value::Null);
}

#[test]
fn scan_f3_has_two_rows() {
    let out = gfcaps(&["scan", "--p", "3", "--n", "1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("GF(3)"));
    assert_eq!(text.lines().filter(|l| l.contains("yes")).count(), 2);
}

#[test]
fn scan_f729_includes_the_order_28_cap() {
    let out = gfcaps(&["scan", "--p", "3", "--n", "6", "--format", "json"]);
    let v = json(&out);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["d"] == 28).unwrap();
    assert_eq!(row["is_cap"], true);
    assert_eq!(row["strong"], true);
}

#[test]
fn tables_text_and_json() {
    let out = gfcaps(&["tables", "set"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("g^{4k}\n0001 0011 0121 1001 1022\n"));
    assert!(text.contains("leftover 0000"));

    let out = gfcaps(&["tables", "set", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["deck"], "set");
    assert_eq!(v["leftover"], "0000");
    assert_eq!(v["cosets"].as_array().unwrap().len(), 4);
    assert_eq!(v["cosets"][0].as_array().unwrap().len(), 20);

    let out = gfcaps(&["tables", "quads", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["leftover"], "000");
    assert_eq!(v["cosets"].as_array().unwrap().len(), 7);
    assert_eq!(v["cosets"][6][8], "201");
}

#[test]
fn cosets_of_the_f81_cap() {
    let out = gfcaps(&["cosets", "--p", "3", "--n", "4", "--d", "20", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["e"], 4);
    let cosets = v["cosets"].as_array().unwrap();
    assert_eq!(cosets.len(), 4);
    for coset in cosets {
        assert_eq!(coset["cap"]["verdict"], true);
        assert_eq!(coset["elements"].as_array().unwrap().len(), 20);
    }
}

#[test]
fn pairs_spectrum_and_union_search() {
    let out = gfcaps(&["pairs", "--p", "3", "--n", "6", "--d", "28", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["spectrum"].as_array().unwrap()[0], 1);
    assert_eq!(v["partition"]["pairs"].as_array().unwrap().len(), 13);
    assert_eq!(v["partition"]["blocks"][0].as_array().unwrap().len(), 56);
    assert_eq!(v["partition"]["block_exponents"][0].as_array().unwrap().len(), 56);

    let out = gfcaps(&["pairs", "--p", "3", "--n", "6", "--d", "28", "--r", "4"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("no 4-coset union cap"));

    // a non-cap subgroup is a mathematical failure with a witness
    let out = gfcaps(&["pairs", "--p", "3", "--n", "4", "--d", "80"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("NOT a cap"));
}

#[test]
fn family_range() {
    let out = gfcaps(&["family", "--n-max", "3", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["n"], 2);
    assert_eq!(results[1]["with_zero_is_cap"], false);
    assert_eq!(v["pass"], true);

    let out = gfcaps(&["family", "--n-min", "5", "--n-max", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn modulus_override_changes_nothing_mathematical() {
    let a = gfcaps(&["verify", "--p", "3", "--n", "6", "--d", "28"]);
    let b = gfcaps(&[
        "verify", "--p", "3", "--n", "6", "--d", "28", "--modulus", "x^6+2x+2",
    ]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(exit_code(&b), 0);
    assert!(stdout(&b).contains("x^6+2x+2"));
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    for args in [
        vec!["scan", "--p", "3", "--n", "4", "--format", "json"],
        vec!["tables", "quads"],
        vec!["pairs", "--p", "3", "--n", "6", "--d", "28", "--format", "json"],
    ] {
        let a = gfcaps(&args);
        let b = gfcaps(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}
