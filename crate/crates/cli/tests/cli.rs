use std::io::Write;
use std::process::{Command, Output, Stdio};

const PETERSEN: &str = "IheA@GUAo\n";
// two K4s with a subdivided edge each, joined through the subdivisions
const BRIDGED: &str = "0 2,0 3,1 2,1 3,2 3,0 4,1 4,4 9,5 7,5 8,6 7,6 8,7 8,5 9,6 9\n";

fn cyclecover(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cyclecover"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().expect("piped").write_all(stdin.as_bytes()).expect("stdin writes");
    child.wait_with_output().expect("binary exits")
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn petersen_with_oracle() {
    let out = cyclecover(&["--in", "-", "--oracle"], PETERSEN);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["m"], 15);
    assert_eq!(recs[0]["optimum"], 21);
    assert!(recs[0]["length"].as_u64().unwrap() <= 23);
    assert_eq!(recs[1]["summary"]["passed"], 1);
}

#[test]
fn bridges_are_rejected() {
    let out = cyclecover(&["--in", "-", "--format", "edgelist"], BRIDGED);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bridge"));
    assert_eq!(records(&out)[0]["summary"]["invalid"], 1);
}

#[test]
fn output_is_deterministic() {
    let input = "C~\nIheA@GUAo\n";
    let a = cyclecover(&["--in", "-", "--report", "text"], input);
    let b = cyclecover(&["--in", "-", "--report", "text", "--seedless"], input);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 3);
}

#[test]
fn trace_goes_to_stderr() {
    let out = cyclecover(&["--in", "-", "--trace"], PETERSEN);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
    assert_eq!(records(&out).len(), 2);
}
