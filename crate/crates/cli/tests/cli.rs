// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use revpla_cli::numfmt::sig;
use revpla_cli::{Document, EquivalenceSection, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED};
use revpla_core::Counterexample;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn revpla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revpla"))
        .args(args)
        .output()
        .expect("spawn revpla")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = revpla(&all);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_passes_with_exit_zero() {
    let o = revpla(&["check", &data("fadd.pla")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("PASS, 8/8 vectors"), "{text}");
    assert!(text.contains("clean ("), "{text}");
}

#[test]
fn missing_file_exits_two() {
    let o = revpla(&["synth", "no/such/file.pla"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    assert!(stderr(&o).contains("no/such/file.pla"));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_pla_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pla");
    fs::write(&path, ".i 2\n.o 1\n01 1\n0x 1\n.e\n").unwrap();
    let o = revpla(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        revpla(&["frobnicate"]).status.code(),
        Some(EXIT_INPUT_ERROR)
    );
    let o = revpla(&["sim", &data("fadd.pla"), "--vector", "10"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    let o = revpla(&["sim", &data("fadd.pla"), "--vector", "1a1"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    let o = revpla(&["report", &data("xor2.pla"), "--params", &data("dev.cfg")]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    assert!(stderr(&o).contains("covers 3 input lines"));
}

#[test]
fn failed_verification_maps_to_exit_one() {
    let mut doc = Document::default();
    assert!(!doc.verification_failed());
    doc.equivalence = Some(EquivalenceSection {
        pass: false,
        vectors: 4,
        counterexamples: vec![Counterexample {
            input: "01".into(),
            expected: "1".into(),
            got: "0".into(),
        }],
    });
    assert!(doc.verification_failed());
    assert_eq!(EXIT_VERIFY_FAILED, 1);
    let text = doc.render(revpla_cli::OutputFormat::Text).unwrap();
    assert!(text.contains("FAIL, 3/4 vectors"));
    assert!(text.contains("input 01 expected 1 got 0"));
}

#[test]
fn json_schema_is_stable() {
    let doc = json(&["report", &data("fadd.pla"), "--params", &data("dev.cfg")]);
    for key in [
        "gates",
        "quantum_cost",
        "garbage",
        "ancilla",
        "sleep_domains",
        "gate_list",
    ] {
        assert!(doc["netlist"].get(key).is_some(), "netlist.{key}");
    }
    assert_eq!(doc["equivalence"]["pass"], true);
    assert_eq!(doc["equivalence"]["counterexamples"], Value::Array(vec![]));
    assert_eq!(doc["audit"]["violations"], Value::Array(vec![]));
    for key in [
        "table",
        "ratio",
        "saving",
        "line_ratios",
        "leakage",
        "average_power_w",
    ] {
        assert!(doc["power"].get(key).is_some(), "power.{key}");
    }
    assert!(doc.get("generated_unix").is_none());

    // n = 3 full decode: 37 AND-plane gates with quantum cost 85.
    assert_eq!(doc["netlist"]["and_plane_gates"], 37);
    let gates = doc["netlist"]["gate_list"].as_array().unwrap();
    assert_eq!(
        gates.len() as u64,
        doc["netlist"]["gates"].as_u64().unwrap()
    );
}

#[test]
fn text_numbers_match_json() {
    let args = ["power", "--params", &data("dev.cfg")];
    let doc = json(&args);
    let text = stdout(&revpla(&args));
    let p = &doc["power"];
    let l = &p["leakage"];
    for (label, v) in [
        ("ratio", &p["ratio"]),
        ("saving", &p["saving"]),
        ("line_ratio PM2", &p["line_ratios"][1]),
        ("circuit_leakage_a", &l["circuit_leakage_a"]),
        ("vgnd_v", &l["vgnd_v"]),
        ("sleep_active_ratio", &l["sleep_active_ratio"]),
        ("average_power_w", &p["average_power_w"]),
    ] {
        let line = format!("{label} {}\n", sig(v.as_f64().unwrap(), 6));
        assert!(text.contains(&line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn sim_reports_outputs_and_sleep() {
    let doc = json(&["sim", &data("fadd.pla"), "--vector", "111"]);
    assert_eq!(doc["simulation"]["outputs"], "11");
    assert_eq!(doc["simulation"]["mode"], "active");
    let doc = json(&[
        "sim",
        &data("fadd.pla"),
        "--vector",
        "110",
        "--mode",
        "sleep",
    ]);
    assert_eq!(doc["simulation"]["outputs"], "XX");
    let doc = json(&["sim", &data("fsub.pla"), "--vector", "011"]);
    // 0 - 1 - 1: difference 0, borrow 1
    assert_eq!(doc["simulation"]["outputs"], "01");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = revpla(&[
        "check",
        &data("xor2.pla"),
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["equivalence"]["vectors"], 4);
}

#[test]
fn csv_columns() {
    let o = revpla(&["power", "--params", &data("dev.cfg"), "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("vector,pm_index,ungated_pw,gated_pw"));
    assert_eq!(lines.clone().count(), 24);
    assert!(text.contains("110,2,221.92,90.57\n"));
    assert!(text.contains("010,1,0,0\n"));

    let o = revpla(&["synth", &data("xor2.pla"), "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("index,kind,inputs,outputs,plane\n"));
    assert_eq!(text.lines().count(), 12);

    let o = revpla(&[
        "sim",
        &data("fadd.pla"),
        "--vector",
        "011",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "output_index,value\n0,0\n1,1\n");
}

#[test]
fn timestamps_are_opt_in() {
    let doc = json(&["check", &data("xor2.pla"), "--timestamps"]);
    assert!(doc["generated_unix"].as_u64().unwrap() > 1_600_000_000);
    let text = stdout(&revpla(&["check", &data("xor2.pla")]));
    assert!(!text.contains("generated_unix"));
}

#[test]
fn custom_calibration_file() {
    let a = json(&["power", "--params", &data("dev.cfg")]);
    let b = json(&[
        "power",
        "--params",
        &data("dev.cfg"),
        "--calib",
        &data("table1.calib"),
    ]);
    assert_eq!(a["power"]["table"], b["power"]["table"]);
    assert_eq!(a["power"]["ratio"], b["power"]["ratio"]);
}
