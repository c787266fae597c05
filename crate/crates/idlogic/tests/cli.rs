//! Exit-code and output contract of the command-line interface. Outputs
//! are byte-stable thanks to the fixed atom ordering, so golden strings
//! are asserted directly.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idlogic"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn wfm_total_definition() {
    let out = run(&["wfm", &data("prop.idt"), &data("unit.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "total: yes\nP = true\nQ = false\n");
}

#[test]
fn wfm_trace_is_stage_by_stage() {
    let out = run(&["wfm", &data("prop.idt"), &data("unit.json"), "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("stage 0: I = {}, J = {P, Q}"));
    assert!(text.contains("stage 1: I = {P}, J = {P, Q}"));
    assert!(text.contains("stage 2: I = {P}, J = {P}"));
}

#[test]
fn wfm_not_total_exits_three() {
    let out = run(&["wfm", &data("negloop.idt"), &data("unit.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "total: no\nP: undefined\n");
}

#[test]
fn wfm_even_chain_parity() {
    let out = run(&["wfm", &data("even.idt"), &data("chain5.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "total: yes\nE = {0, 2, 4}\n");

    let out = run(&["wfm", &data("even.idt"), &data("chain4.json")]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.starts_with("total: no\n"));
    assert!(text.contains("E[3]: undefined"));
}

#[test]
fn wfm_json_schema() {
    let out = run(&["wfm", &data("prop.idt"), &data("unit.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["command"], "wfm");
    assert_eq!(v["total"], true);
    assert_eq!(v["predicates"]["P"]["true"][0], serde_json::json!([]));
    assert_eq!(v["predicates"]["Q"]["true"], serde_json::json!([]));
}

#[test]
fn missing_file_is_a_parse_class_error() {
    let out = run(&["wfm", "no-such-file.idt", &data("unit.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn syntax_error_reports_position_and_exits_one() {
    let out = bin()
        .args(["wfm", "-", &data("unit.json")])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.as_mut().unwrap().write_all(b"pred P/0.\nP &").unwrap();
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));
}

#[test]
fn semantic_error_exits_two() {
    // the structure interprets nothing, so checking the theory fails
    let out = run(&["check", &data("prop.idt"), &data("unit.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_error_exits_four() {
    let out = bin()
        .env("IDLOGIC_BUDGET", "2")
        .args(["models", &data("prop.idt"), &data("unit.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn models_lists_in_lattice_order() {
    let out = run(&["models", &data("tc.idt"), &data("graph.json"), "--free", "T"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("models: 1\n"));
    assert!(text.contains("model 1: {T[a,b], T[a,c], T[b,c]}"));

    // an unsatisfiable theory yields the no-models exit code
    let out = run(&["models", &data("negloop.idt"), &data("unit.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "models: 0\n");
}

#[test]
fn models_respects_max() {
    // two free propositions, no axioms constraining them
    let out = bin()
        .args(["models", "-", &data("unit.json"), "--max", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.as_mut().unwrap().write_all(b"pred P/0. pred Q/0.").unwrap();
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("models: 4\n"));
    assert!(text.contains("... 2 more"));
}

#[test]
fn transform_output_reparses() {
    let out = run(&["transform", &data("even.idt"), "--op", "complete"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("!x: E(x) <=> x=0 | ?y: (x=s(y) & ~E(y))."));
    // feed the emitted theory back through the parser
    let reparsed = idlogic::syntax::parse_theory(&text).unwrap();
    assert_eq!(reparsed.axioms.len(), 1);

    for op in ["posind", "circ"] {
        let out = run(&["transform", &data("even.idt"), "--op", op]);
        assert_eq!(out.status.code(), Some(0), "{op}");
        idlogic::syntax::parse_theory(&stdout(&out)).unwrap_or_else(|e| {
            panic!("{op} output failed to reparse: {e}\n{}", stdout(&out))
        });
    }
}

#[test]
fn partition_certificates() {
    let out = run(&["partition", &data("evenodd.idt"), &data("cycle5.json"), "--groups", "E/O"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("part 1: defines E; total"));
    assert!(text.contains("reduction partition: certified"));

    // a split across a genuine cycle reports the witness and exits 3
    let out = bin()
        .args(["partition", "-", &data("unit.json"), "--groups", "P/Q"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(b"pred P/0. pred Q/0.\n{ P <- Q. Q <- P. }.")
                .unwrap();
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("reduction partition: unknown"));
    assert!(text.contains("cycle: P, Q"));
}

#[test]
fn ground_dump_and_dot() {
    let out = run(&["ground", &data("even.idt"), &data("chain4.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "E[0] := true\nE[1] := ~-E[0]\nE[2] := ~-E[1]\nE[3] := ~-E[2] | ~-E[3]\n"
    );

    let out = run(&["ground", &data("even.idt"), &data("chain4.json"), "--dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph dependencies {"));
    assert!(text.contains("\"E[3]\" -> \"E[3]\" [label=\"neg\"];"));
}

#[test]
fn check_accepts_a_model() {
    // a structure interpreting P and Q as the intended model
    let out = bin()
        .args(["check", &data("prop.idt"), "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(br#"{ "domain": ["u"], "relations": { "P": [[]], "Q": [] } }"#)
                .unwrap();
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "satisfied: yes\n");
}
