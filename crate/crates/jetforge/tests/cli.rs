use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jetforge"));
    c.env_remove("JETFORGE_FIELD");
    c
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn with_stdin(mut cmd: Command, input: &str) -> Output {
    let mut child = cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn cusp_matches_golden_text_and_json() {
    let text = bin().args(["jet", "--n", "2"]).arg(golden("cusp.jf")).output().unwrap();
    assert!(text.status.success());
    assert_eq!(text.stdout, std::fs::read(golden("cusp_jet2.txt")).unwrap());
    let json = bin().args(["--format", "json", "jet", "--n", "2"]).arg(golden("cusp.jf")).output().unwrap();
    assert_eq!(json.stdout, std::fs::read(golden("cusp_jet2.json")).unwrap());
}

#[test]
fn json_is_byte_stable() {
    let run = || bin().args(["--format", "json", "p1", "--d", "2", "--n", "2", "--cocycle"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn reads_stdin() {
    let mut cmd = bin();
    cmd.args(["jet", "--n", "1", "-"]);
    let out = with_stdin(cmd, "ring Q[x, y]\nideal f = y^2 - x^3\n");
    assert!(out.status.success());
    assert!(stdout(&out).contains("f_1 = -3*x_0^2*x_1 + 2*y_0*y_1"));
}

#[test]
fn parse_error_reports_position() {
    let mut cmd = bin();
    cmd.args(["jet", "--n", "1"]);
    let out = with_stdin(cmd, "ring Q[x, y]\nideal f = y^2 - z\n");
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 2, column 17") && err.contains("undeclared variable z"), "{err}");
}

#[test]
fn field_from_environment() {
    let mut cmd = bin();
    cmd.env("JETFORGE_FIELD", "F7").args(["jet", "--n", "1"]);
    let out = with_stdin(cmd, "ring k[x]\nideal f = 8*x^2\n");
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("F7") && text.contains("f_1 = 2*x_0*x_1"), "{text}");
}

#[test]
fn bad_field_in_environment() {
    let mut cmd = bin();
    cmd.env("JETFORGE_FIELD", "F8").args(["jet", "--n", "1"]);
    let out = with_stdin(cmd, "ring k[x]\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_twist() {
    let out = bin().args(["p1", "--d", "-2", "--n", "2", "--cocycle"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin().args(["check", "--suite", "nope"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["jet", "--bogus"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["check", "--n", "2"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn check_single_suite() {
    let out = bin().args(["--format", "json", "check", "--suite", "leibniz", "--trials", "3"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
}

#[test]
fn replay_one_instance() {
    let mut cmd = bin();
    cmd.args(["check", "--suite", "leibniz", "--replay", "-", "--n", "3"]);
    let out = with_stdin(cmd, "ring Q[x, y]\nideal f1 = x*y - 1\nideal f2 = x^2\n");
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("holds"));

    let mut cmd = bin();
    cmd.args(["check", "--suite", "p1_cocycle", "--replay", "-", "--n", "2", "--d", "-1"]);
    let out = with_stdin(cmd, "");
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn module_without_declaration_is_an_error() {
    let mut cmd = bin();
    cmd.args(["module", "--n", "1"]);
    let out = with_stdin(cmd, "ring Q[x]\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn module_rows_follow_twisted_blocks() {
    let mut cmd = bin();
    cmd.args(["--format", "json", "module", "--n", "1"]);
    let out = with_stdin(cmd, "ring Q[x, y]\nmodule rank 2\nrelation r = [x, y]\n");
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["e1_0", "e1_1", "e2_0", "e2_1"]));
}
