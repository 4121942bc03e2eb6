use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_detachable"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("detachable-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn gen_k35_edge_list() {
    let text = stdout(&run(&["gen", "--family", "k3m", "--m", "5", "--format", "graph"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph 8 15"));
    assert_eq!(lines.count(), 15);
    // The tag/key=value form and the flag form agree.
    assert_eq!(stdout(&run(&["gen", "--family", "k3m/m=5"])), text);
}

#[test]
fn wheel_has_no_pairs() {
    let w = stdout(&run(&["gen", "--family", "wheel", "--n", "7"]));
    let path = temp("wheel14.graph", &w);
    let out = stdout(&run(&["pairs", "--in", path.to_str().unwrap(), "--mode", "first"]));
    assert_eq!(out, "none\n");
}

#[test]
fn dense_graph_classifies_with_a_pair() {
    let out = stdout(&run_stdin(&["classify", "--in", "-"], "E~~w\n"));
    assert!(out.starts_with("outcome detachable_pair\n"), "{out}");
    assert!(out.contains("witness {\"kind\":\"detachable_pair\""), "{out}");
    let json = stdout(&run_stdin(&["classify", "--in", "-", "--format", "json"], "E~~w\n"));
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["outcome"], "detachable_pair");
    assert_eq!(v["graph_outcome"], "detachable_pair");
}

#[test]
fn family_outcomes() {
    let out = stdout(&run(&["classify", "--family", "k3m", "--m", "5", "--dual"]));
    assert!(out.starts_with("outcome triad_paddle_dual\n"), "{out}");
    let out = stdout(&run(&["classify", "--family", "twisted_wheel/j=2,k=2"]));
    assert!(out.contains("graph_outcome twisted_wheel\n"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "wheel", "--n", "7", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["pairs"]).status.code(), Some(2));
    assert_eq!(run(&["pairs", "--in", "x", "--family", "wheel"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["classify", "--in", "-"], "not graph6 at all\n").status.code(), Some(2));
    assert_eq!(run_stdin(&["analyze", "--in", "-"], "graph 3 1\n0 9\n").status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "wheel", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "wheel", "--n", "12"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "wheel", "--n", "12", "--cap", "24"]).status.code(), Some(0));
    assert_eq!(run(&["gen", "--family", "wheel", "--n", "7", "--cap", "25"]).status.code(), Some(2));
}

#[test]
fn convert_round_trips() {
    let g = stdout(&run(&["gen", "--family", "mutant_wheel", "--n", "6"]));
    let g6 = stdout(&run_stdin(&["convert", "--in", "-", "--to", "graph6"], &g));
    let back = stdout(&run_stdin(&["convert", "--in", "-", "--to", "graph6"], &stdout(&run_stdin(&["convert", "--in", "-", "--to", "graph"], &g6))));
    assert_eq!(back, g6);
    let bases = stdout(&run_stdin(&["convert", "--in", "-", "--to", "bases"], &g));
    assert_eq!(stdout(&run_stdin(&["convert", "--in", "-", "--to", "bases"], &bases)), bases);
    let gfp = stdout(&run(&["gen", "--family", "hinged_triad_paddle", "--m", "4", "--format", "gfp"]));
    assert!(gfp.starts_with("gfp "));
    assert_eq!(run_stdin(&["convert", "--in", "-", "--to", "graph"], &gfp).status.code(), Some(2));
}

#[test]
fn dual_and_minor() {
    let m = stdout(&run(&["gen", "--family", "wheel", "--n", "7", "--format", "bases"]));
    let d = stdout(&run_stdin(&["dual", "--in", "-"], &m));
    assert_eq!(stdout(&run_stdin(&["dual", "--in", "-"], &d)), m);
    let minor = stdout(&run_stdin(&["minor", "--in", "-", "--delete", "13", "--contract", "0,1"], &m));
    assert!(minor.starts_with("bases 11 5\n"), "{minor}");
    assert_eq!(run_stdin(&["minor", "--in", "-", "--delete", "1", "--contract", "1"], &m).status.code(), Some(2));
}

#[test]
fn analyze_wheel() {
    let out = stdout(&run(&["analyze", "--family", "wheel", "--n", "7"]));
    assert!(out.contains("elements 14 rank 7 3-connected true\n"), "{out}");
    assert!(out.contains("triangles 7 "), "{out}");
    assert!(out.contains(" cyclic\n"), "{out}");
    assert!(out.contains("lambda |X|=1 1:14\n"), "{out}");
    let json = stdout(&run(&["analyze", "--family", "wheel", "--n", "7", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["triads"].as_array().unwrap().len(), 7);
}

#[test]
fn pairs_all_lists_every_pair() {
    let out = stdout(&run_stdin(&["pairs", "--in", "-", "--mode", "all"], "E~~w\n"));
    // Every pair of K6 can be deleted, and none contracted.
    assert_eq!(out.lines().count(), 105);
    assert!(out.lines().all(|l| l.ends_with(" delete")));
    let many = stdout(&run_stdin(&["pairs", "--in", "-"], "E~~w\nE~~w\n"));
    assert_eq!(many, "-:1: 0 1 delete\n-:2: 0 1 delete\n");
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "--families", "wheel,k3m", "--max-elements", "16", "--random", "12", "--seed", "3"];
    let one = run(&[&["--threads", "1"][..], &args].concat());
    let four = run(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stdout));
    assert_eq!(one.stdout, four.stdout);
    let report = temp("report.csv", "");
    let r = report.to_str().unwrap();
    stdout(&run(&[&args[..], &["--report", r, "--report-format", "csv"]].concat()));
    let first = std::fs::read_to_string(&report).unwrap();
    stdout(&run(&[&args[..], &["--report", r, "--report-format", "csv"]].concat()));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), first);
    assert!(first.starts_with("id,source,spec,elements,outcome,witness,timing_ms,version\n"));
}

#[test]
fn verify_findings_exit_1() {
    // The j = 1 twisted wheels also carry even-fan-paddle structures, which the
    // exclusivity check reports.
    let o = run(&["verify", "--families", "twisted_wheel", "--max-elements", "14", "--random", "0", "--no-planted"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("finding family:twisted_wheel/j=1,k=3 exclusivity"), "{text}");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--skip", "nonsense", "--random", "0"]).status.code(), Some(2));
}
