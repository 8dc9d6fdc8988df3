use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn z8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z8codes"))
        .args(args)
        .env_remove("Z8_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn error_line(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("an error line on stderr");
    serde_json::from_str(line).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn assert_valid(report: &Value) {
    let schema = schema();
    let messages: Vec<String> = match schema.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {messages:#?}");
}

#[test]
fn analyze_report_validates_against_schema() {
    let out = z8(&["analyze", "repetition:a=1,n=2", "--verify", "--torsion", "--weights", "all"]);
    assert_valid(&json(&out));
}

#[test]
fn suite_report_validates_against_schema() {
    let out = z8(&["verify-paper", "--scope", "simplex"]);
    assert_valid(&json(&out));
}

#[test]
fn octacode_scope_has_a_single_entry() {
    let report = json(&z8(&["verify-paper", "--scope", "octacode"]));
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["code"]["name"], "octacode");
}

#[test]
fn octacode_homogeneous_claim_gets_a_verdict() {
    let report = json(&z8(&["analyze", "octacode", "--covrad", "homogeneous", "--verify"]));
    let ledger = report["entries"][0]["ledger"].as_array().unwrap();
    let hw = ledger.iter().find(|l| l["metric"] == "homogeneous").unwrap();
    let claim = hw["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["relation"] == ">=" && b["value"] == 6 && b["status"] == "monitored")
        .unwrap();
    assert_ne!(claim["verdict"], "untested");
    assert_eq!(claim["oracle_value"], hw["exact"]);
}

#[test]
fn simplex_alpha_one_torsion_report_passes() {
    let report = json(&z8(&["analyze", "simplex-alpha:k=1", "--torsion"]));
    let entry = &report["entries"][0];
    assert_eq!(entry["code"]["ktype"], serde_json::json!([1, 0, 0]));
    assert_eq!(entry["code"]["cardinality_log2"], 3);
    let checks = entry["structure"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["verdict"] != "fail"));
}

#[test]
fn repetition_scope_confirms_the_euclidean_value_at_eight() {
    let report = json(&z8(&["verify-paper", "--scope", "repetition"]));
    let found = report["entries"].as_array().unwrap().iter().any(|e| {
        e["code"]["name"] == "repetition:a=1,n=8"
            && e["ledger"].as_array().unwrap().iter().any(|l| {
                l["metric"] == "euclidean"
                    && l["exact"] == 44
                    && l["bounds"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .any(|b| b["value"] == 44 && b["verdict"] == "confirmed")
            })
    });
    assert!(found);
}

#[test]
fn dual_table_output_round_trips() {
    let out = z8(&["dual", "octacode", "--format", "table"]);
    assert!(out.status.success());
    let path = scratch("octacode_dual.txt", &String::from_utf8(out.stdout).unwrap());
    let again = json(&z8(&["dual", path.to_str().unwrap()]));
    let direct = json(&z8(&["analyze", "octacode"]));
    assert_eq!(again["code"]["cardinality_log2"], direct["entries"][0]["code"]["cardinality_log2"]);

    let a = json(&z8(&["covrad", path.to_str().unwrap(), "--metric", "homogeneous"]));
    let b = json(&z8(&["covrad", "octacode", "--metric", "homogeneous"]));
    assert_eq!(a[0]["radius"], b[0]["radius"]);
}

#[test]
fn matrix_file_with_comments_is_accepted() {
    let path = scratch("rep.txt", "# repetition\n1 1 1\n");
    let report = json(&z8(&["covrad", path.to_str().unwrap(), "--metric", "euclidean", "--oracle", "scan"]));
    assert_eq!(report[0]["oracle"], "scan");
    assert!(report[0]["radius"].is_u64());
}

#[test]
fn gray_command_maps_digits() {
    let rows = json(&z8(&["gray", "01234567"]));
    assert_eq!(rows[0]["image"], "00000101001101101111101011001001");
    assert_eq!(rows[0]["homogeneous_weight"], rows[0]["image_weight"]);
}

#[test]
fn single_thread_output_is_byte_stable() {
    let a = z8(&["verify-paper", "--scope", "block-repetition", "--threads", "1"]);
    let b = z8(&["verify-paper", "--scope", "block-repetition", "--threads", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_the_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gray.json");
    let out = z8(&["gray", "4", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(written[0]["image"], "1111");
}

#[test]
fn exit_codes_and_error_lines() {
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (vec!["gray".into(), "0128".into()], 3, "parse"),
        (vec!["verify-paper".into(), "--scope".into(), "nowhere".into()], 3, "parse"),
        (vec!["analyze".into(), "simplex-beta:k=1".into()], 4, "parameter"),
        (
            vec!["analyze".into(), scratch("empty.txt", "# nothing\n").to_string_lossy().into_owned()],
            4,
            "parameter",
        ),
        (
            vec!["analyze".into(), scratch("ragged.txt", "1 2 3\n1 2\n").to_string_lossy().into_owned()],
            3,
            "parse",
        ),
        (
            vec!["covrad".into(), "simplex-alpha:k=2".into(), "--oracle".into(), "scan".into()],
            5,
            "budget",
        ),
        (vec!["analyze".into(), "./missing.txt".into()], 7, "io"),
    ];
    for (args, code, kind) in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = z8(&refs);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let line = error_line(&out);
        assert_eq!(line["error"], kind, "{args:?}");
        assert!(line["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(z8(&["analyze"]).status.code(), Some(2));
    assert_eq!(z8(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_flags_override_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_z8codes"))
        .args(["covrad", "octacode", "--metric", "homogeneous", "--oracle", "coset", "--table-budget", "16"])
        .env("Z8_TABLE_BUDGET", "100000000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}
