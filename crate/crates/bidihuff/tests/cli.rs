//! End-to-end tests of the command-line binary: exit codes, machine-readable
//! output, and conformance of every JSON report to the shipped schema.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bidihuff"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Minimal structural validation of `value` against the envelope schema:
/// required keys, no unknown top-level keys, command enum, config shape.
fn assert_conforms(value: &Value) {
    let schema = schema();
    let obj = value.as_object().expect("envelope is an object");
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    let props = schema["properties"].as_object().unwrap();
    for key in obj.keys() {
        assert!(props.contains_key(key), "unknown envelope key {key}");
    }
    assert_eq!(value["schema_version"], schema["properties"]["schema_version"]["const"]);
    let commands = schema["properties"]["command"]["enum"].as_array().unwrap();
    assert!(commands.contains(&value["command"]));
    if let Some(config) = obj.get("config") {
        let cfg_schema = &schema["properties"]["config"];
        let cfg = config.as_object().expect("config is an object");
        for key in cfg_schema["required"].as_array().unwrap() {
            assert!(cfg.contains_key(key.as_str().unwrap()), "missing config.{key}");
        }
        for key in cfg.keys() {
            assert!(
                cfg_schema["properties"].as_object().unwrap().contains_key(key),
                "unknown config key {key}"
            );
        }
        assert!(config["n_strings"].is_u64());
        assert!(config["master_seed"].is_u64());
        assert!(config["early_commit"].is_boolean());
    }
}

#[test]
fn validate_accepts_complete_vector() {
    let out = run(&["validate", "-L", "1,2,2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(1,2,2)\n");
}

#[test]
fn validate_rejects_overfull_vector_with_exit_1() {
    let out = run(&["validate", "-L", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("Kraft"), "stderr: {err}");
}

#[test]
fn usage_error_exits_2() {
    let out = run(&["validate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_count_only() {
    let out = run(&["enumerate", "-L", "3,3,3,3,3,3,3,3", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn enumerate_lists_family() {
    let out = run(&["enumerate", "-L", "1,2,2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0,10,11\n1,00,01\n");
}

#[test]
fn enumerate_cap_exceeded_exits_1() {
    let out = run(&["enumerate", "-L", "2,2,3,3,4,4,4,4", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_reports_code_and_measures() {
    let out = run(&["search", "-L", "1,2,2", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_conforms(&v);
    assert_eq!(v["result"]["code"], "0,10,11");
    assert_eq!(v["result"]["measures"]["m_total"]["fraction"], "3/4");
}

#[test]
fn measure_csv_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("tree.dot");
    let out = run(&[
        "measure",
        "--anti-uniform",
        "4",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "m_plus,m_delta,m_total\n3/4,3/8,9/8\n");
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph"));
}

#[test]
fn measure_from_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("code.txt");
    std::fs::write(&file, "# six-symbol example\n00\n01\n100\n101\n110\n111\n").unwrap();
    let out = run(&["measure", "--code-file", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "m_plus,m_delta,m_total\n1/2,-1/4,1/4\n");
}

#[test]
fn decode_trace_format() {
    let out = run(&["decode", "--anti-uniform", "3", "--bits", "0100", "--trace"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("t=1 bit=0 |L|="), "got: {text}");
    assert!(text.contains("decision_index,commit_time,first_end,delay,symbols"));
}

#[test]
fn decode_invalid_stream_exits_1() {
    // "11" is not decodable under {0,10,11}? it is (one codeword); use a
    // stream ending inside a codeword instead
    let out = run(&["decode", "--anti-uniform", "3", "--bits", "011"]);
    assert!(out.status.success());
    let out = run(&["decode", "--anti-uniform", "3", "--bits", "01"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_json_envelope_conforms() {
    let out = run(&[
        "simulate",
        "--anti-uniform",
        "3",
        "--strings",
        "50",
        "--symbols",
        "10",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_conforms(&v);
    assert_eq!(v["config"]["master_seed"], 9);
    assert_eq!(v["config"]["n_strings"], 50);
    assert!(v["result"]["stats"]["mean_delay"].is_number());
}

#[test]
fn simulate_csv_profile_header() {
    let out = run(&[
        "simulate", "--anti-uniform", "3", "--strings", "20", "--symbols", "10",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("decision_index,mean_delay,count\n"));
}

#[test]
fn sweep_csv_row() {
    let out = run(&[
        "sweep", "-L", "1,2,2", "--strings", "30", "--symbols", "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("length_vector,count,min_dbar,max_dbar,selected_dbar,delta_d\n"));
    assert!(text.contains("(1,2,2),2,"), "got: {text}");
}

#[test]
fn theory_prints_closed_form() {
    let out = run(&["theory", "-n", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("9,1.031373"));
    let out = run(&["theory", "-n", "3", "--terms", "50", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_conforms(&v);
    assert_eq!(v["result"]["closed_form"]["fraction"], "5/3");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "enumerate", "-L", "1,2,2", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_conforms(&v);
    assert_eq!(v["result"]["count"], "2");
}

#[test]
fn reproduce_table3_fast_columns() {
    let out = run(&[
        "reproduce", "table3", "--strings", "30", "--symbols", "20",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,theory,simulation,printed_theory,printed_simulation\n"));
    assert_eq!(text.lines().count(), 11); // header + n = 3..12
    assert!(text.contains("12,1.0054"));
}

#[test]
fn reproduce_rejects_unknown_table() {
    let out = run(&["reproduce", "table9"]);
    assert_eq!(out.status.code(), Some(1));
}
