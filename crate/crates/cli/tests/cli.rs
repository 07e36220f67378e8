use std::process::{Command, Output};

use g2ks::algebra::{RFMatrix, RatFunc};
use serde_json::Value;

fn g2ks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2ks")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = g2ks(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).expect("valid JSON")
}

#[test]
fn transition_emits_a_parseable_matrix() {
    let doc = json(&["transition", "--from", "3,3", "--to", "6,2"]);
    let t: RFMatrix = serde_json::from_value(doc["matrix"].clone()).unwrap();
    assert_eq!((t.rows(), t.cols()), (3, 2));
    assert!(t.get(0, 0).is_zero());
    let doc = json(&["transition", "--from", "0,0", "--to", "3,1"]);
    let t: RFMatrix = serde_json::from_value(doc["matrix"].clone()).unwrap();
    assert_eq!(t.get(0, 0), &RatFunc::s());
}

#[test]
fn basis_lists_every_slot() {
    let doc = json(&["basis", "--n", "6", "--m", "2"]);
    let slots = doc["slots"].as_array().unwrap();
    assert_eq!(slots.len(), 3);
    assert_eq!(slots[1]["kind"], "v'");
    let text = stdout(&["basis", "--n", "6", "--m", "2", "--format", "text"]);
    assert!(text.starts_with("K-type (6,2)"));
}

#[test]
fn eigenvalues_round_trip_through_json() {
    let doc = json(&["eigenvalues", "--n", "6", "--m", "2", "--eps", "0", "--json"]);
    let rows = doc["eigenvalues"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["slot"].as_u64().unwrap()).collect::<Vec<_>>(), vec![0, 2]);
    for r in rows {
        let mu = RatFunc::from_json_value(&r["mu"]).unwrap();
        assert!((&mu * &mu.reflect()).is_one());
    }
}

#[test]
fn amatrix_and_orders() {
    let doc = json(&["amatrix", "--n", "6", "--m", "2", "--eps", "0"]);
    assert_eq!(doc["slots"], serde_json::json!([0, 2]));
    assert_eq!(doc["audit"]["upper_triangular"], true);
    let doc = json(&["orders", "--n", "6", "--m", "2", "--eps", "0", "--s", "2/1"]);
    assert_eq!(doc["smith"]["valuations"], serde_json::json!([0, 1]));
    assert_eq!(doc["smith_is_proxy"], true);
}

#[test]
fn reducibility_with_scan() {
    let doc = json(&["reducibility", "--s", "2/3", "--eps", "1", "--scan", "--bound", "12"]);
    assert_eq!(doc["reducibility"]["reducible"], true);
    assert!(!doc["scan"]["witnesses"].as_array().unwrap().is_empty());
    let doc = json(&["reducibility", "--s", "3/2", "--eps", "0"]);
    assert_eq!(doc["reducible"], false);
}

#[test]
fn classify_labels() {
    let doc = json(&["classify", "--s", "3/2", "--eps", "0"]);
    assert_eq!(doc["labels"], serde_json::json!(["complementary-series", "unitary-axis"]));
    let doc = json(&["classify", "--s", "axis", "--eps", "1"]);
    assert_eq!(doc["labels"], serde_json::json!(["unitary-axis"]));
    let doc = json(&["classify", "--s", "2/1", "--eps", "1"]);
    assert_eq!(doc["labels"], serde_json::json!(["reducible-point"]));
}

#[test]
fn subrep_reports_a_clean_pattern() {
    let doc = json(&["subrep", "--name", "ladder", "--bound", "16"]);
    assert_eq!(doc["subrep"]["s0"], "2/3");
    assert_eq!(doc["check"]["mismatches"], serde_json::json!([]));
    let doc = json(&["subrep", "--name", "qds", "--k", "8", "--bound", "16"]);
    assert_eq!(doc["subrep"]["eps"], 1);
}

#[test]
fn verify_printed_values_and_empty_list() {
    let doc = json(&["verify", "--nmax", "6", "--suites", "paper-values"]);
    assert_eq!(doc["suites"][0]["suite"], "paper-values");
    assert!(doc["suites"][0]["cases"].as_u64().unwrap() > 0);
    let doc = json(&["verify", "--suites", ""]);
    assert_eq!(doc["suites"], serde_json::json!([]));
    let doc = json(&["verify", "--nmax", "8", "--suites", "appendix"]);
    assert!(doc["arbitration"].as_str().unwrap().contains("m+n-k+1"));
    let text = stdout(&["verify", "--nmax", "6", "--suites", "functional-equation", "--format", "text"]);
    assert!(text.contains("PASS functional-equation"));
}

#[test]
fn lattice_highlights_special_lines() {
    let text = stdout(&["lattice", "--eps", "1", "--s", "2/3", "--bound", "24"]);
    assert!(text.contains("highlighted: ladder"));
    assert!(text.contains("[0]"));
    let svg = stdout(&["lattice", "--eps", "0", "--s", "1/3", "--bound", "24", "--format", "svg"]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("highlighted: double-ladder"));
    let plain = stdout(&["lattice", "--eps", "0", "--s", "3/2", "--bound", "24"]);
    assert!(plain.contains("highlighted: none"));
    assert!(!plain.contains('['));
    let cells: Vec<&str> = plain
        .lines()
        .filter_map(|l| l.split_once('|').map(|(_, rest)| rest))
        .flat_map(str::split_whitespace)
        .filter(|c| *c != ".")
        .collect();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c.split(',').all(|o| o == "0")), "{cells:?}");
}

#[test]
fn table_formats() {
    let doc = json(&["table", "--eps", "0", "--range", "0..8"]);
    assert_eq!(doc["columns"], serde_json::json!(["n", "m", "slot", "eps", "mu"]));
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    let keys: Vec<(i64, i64, i64)> = rows
        .iter()
        .map(|r| (r["n"].as_i64().unwrap(), r["m"].as_i64().unwrap(), r["slot"].as_i64().unwrap()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for r in rows {
        RatFunc::from_json_value(&r["mu"]).unwrap();
    }
    let csv = stdout(&["table", "--what", "valuations", "--eps", "1", "--s", "2/1", "--range", "0..16", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "0,2,0,1,1"));
    assert_eq!(stdout(&["table", "--eps", "0", "--range", "9..3", "--format", "csv"]), "n,m,slot,eps,mu\n");
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["table", "--eps", "1", "--range", "0..12"];
    assert_eq!(stdout(&args), stdout(&args));
    let path = std::env::temp_dir().join(format!("g2ks-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = g2ks(&["--out", p, "classify", "--s", "1/1", "--eps", "0"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["classify", "--s", "1/1", "--eps", "0"]));
}

#[test]
fn thread_count_from_environment() {
    let base = stdout(&["table", "--eps", "0", "--range", "0..10"]);
    let out = Command::new(env!("CARGO_BIN_EXE_g2ks"))
        .env("G2KS_THREADS", "1")
        .args(["table", "--eps", "0", "--range", "0..10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), base);
}

#[test]
fn precondition_violations_exit_with_two() {
    for args in [
        &["subrep", "--name", "qds", "--k", "5"][..],
        &["reducibility", "--s", "0.5", "--eps", "0"],
        &["eigenvalues", "--n", "1", "--m", "0"],
        &["amatrix", "--n", "6", "--m", "2", "--eps", "2"],
        &["verify", "--nmax", "4"],
        &["verify", "--suites", "nonsense"],
        &["table", "--eps", "0", "--range", "three"],
        &["table", "--eps", "0", "--what", "valuations"],
        &["transition", "--from", "3,3", "--to", "9,9"],
    ] {
        let out = g2ks(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
