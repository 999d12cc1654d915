//! End-to-end tests of the command-line interface: record schemas, input
//! order preservation under worker threads, exit codes, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn leafcost(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leafcost"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn leafcost");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait for leafcost")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn fc_records_follow_the_schema() {
    let out = leafcost(&["fc"], "C~\nBw\n");
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["graph6"], "C~");
    assert_eq!(recs[0]["phi"], 0);
    assert_eq!(recs[0]["n"], 4);
    assert_eq!(recs[1]["phi"], 2);
    assert_eq!(recs[1]["optimal_profile"], serde_json::json!([2, 2, 2]));
    assert_eq!(recs[1]["per_vertex"], serde_json::json!([2, 2, 2]));
}

#[test]
fn line_errors_set_exit_code_2_and_keep_the_stream_going() {
    let out = leafcost(&["fc"], "C~\nnot graph6 ::\nBw\n");
    assert_eq!(out.status.code(), Some(2));
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 3);
    assert!(recs[1]["error"].is_string());
    assert_eq!(recs[2]["phi"], 2);
}

#[test]
fn two_connectivity_gate_is_switchable() {
    // DQc has a cut vertex.
    let out = leafcost(&["fc"], "DQc\n");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_lines(&out)[0]["error"], "NotTwoConnected");
    let out = leafcost(&["fc", "--no-require-2-connected"], "DQc\n");
    // The fault cost itself still refuses cut vertices.
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_lines(&out)[0]["error"].is_string());
}

#[test]
fn ml_and_classify_records() {
    let out = leafcost(&["ml"], "IheA@GUAo\nC~\n");
    let recs = stdout_lines(&out);
    assert_eq!(recs[0]["ml"], 2);
    assert_eq!(recs[1]["ml"], 1);

    let out = leafcost(&["classify"], "IheA@GUAo\n");
    let recs = stdout_lines(&out);
    assert_eq!(recs[0]["class"], "leaf-critical");
    assert_eq!(recs[0]["k"], 2);
}

#[test]
fn output_order_matches_input_order_under_threads() {
    // 56 distinct graphs with visibly different outputs.
    let gen = leafcost(&["generate", "--order", "6"], "");
    let lines: Vec<String> = String::from_utf8_lossy(&gen.stdout)
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines.len(), 56);
    let input = lines.join("\n") + "\n";
    let single = leafcost(&["fc", "--threads", "1"], &input);
    let multi = leafcost(&["fc", "--threads", "4"], &input);
    assert_eq!(single.stdout, multi.stdout, "records must stay in input order");
    let recs = stdout_lines(&single);
    for (line, rec) in lines.iter().zip(&recs) {
        assert_eq!(&rec["graph6"], line);
    }
}

#[test]
fn survey_reproduces_the_small_table_row() {
    let out = leafcost(&["survey", "--order", "6"], "");
    assert!(out.status.success());
    let rec = &stdout_lines(&out)[0];
    assert_eq!(rec["counts"]["0"], 13);
    assert_eq!(rec["counts"]["2"], 43);
    assert_eq!(rec["total"], 56);
    assert_eq!(rec["source"], "internal-generator");
}

#[test]
fn survey_accepts_an_external_stream() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.g6");
    // K4 and K_{2,3}.
    std::fs::write(&path, "C~\nD]o\n").unwrap();
    let out = leafcost(&["survey", "--input", path.to_str().unwrap()], "");
    assert!(out.status.success());
    let rec = &stdout_lines(&out)[0];
    assert_eq!(rec["counts"]["0"], 1);
    assert_eq!(rec["counts"]["2"], 1);
    assert_eq!(rec["source"], "external-stream");
}

#[test]
fn construct_emits_graph6_and_roles() {
    let out = leafcost(&["construct", "gm", "--param", "3"], "");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let g6 = lines.next().unwrap();
    let g = leafcost::parse_graph6(g6).unwrap();
    assert_eq!(g.n(), 8);
    let roles: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(roles["u"], 0);
    assert_eq!(roles["a2"], 6);

    let out = leafcost(&["construct", "fig7", "--graph6-only"], "");
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        leafcost::parse_graph6(line).unwrap();
    }
}

#[test]
fn construct_is_byte_stable() {
    let a = leafcost(&["construct", "cubic-fc3", "--param", "2"], "");
    let b = leafcost(&["construct", "cubic-fc3", "--param", "2"], "");
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn fragment_command_certifies_k3() {
    let out = leafcost(&["fragment", "Bw", "--a", "0", "--x", "1", "--y", "2"], "");
    assert!(out.status.success());
    let rec = &stdout_lines(&out)[0];
    assert_eq!(rec["class"], "weak");
    assert!(rec["witnesses"].as_array().unwrap().len() >= 3);
}

#[test]
fn generate_is_deterministic_and_sorted() {
    let a = leafcost(&["generate", "--order", "5", "--connectivity", "any"], "");
    let b = leafcost(&["generate", "--order", "5", "--connectivity", "any"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 34);
}

#[test]
fn timeout_produces_an_error_record() {
    // The 28-vertex cubic ring: legitimate input whose fault cost takes
    // seconds, far over a zero-second budget.
    let big = leafcost::constructions::build_cubic_fc3(3).unwrap().graph;
    let line = leafcost::write_graph6(&big);
    let out = leafcost(&["fc", "--timeout-secs", "0"], &format!("{line}\n"));
    assert_eq!(out.status.code(), Some(2));
    let recs = stdout_lines(&out);
    assert_eq!(recs[0]["error"], "search aborted: deadline expired");
}

#[test]
fn oracle_check_reports_lines_and_succeeds() {
    let out = leafcost(&["oracle-check"], "");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("brute force"));
    assert!(text.lines().filter(|l| l.ends_with(": ok")).count() >= 6);
    assert!(text.contains("all checks passed"));
}
