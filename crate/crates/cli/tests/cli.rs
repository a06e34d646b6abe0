use std::path::PathBuf;
use std::process::{Command, Output};

const A: &str = "V[t=0:1,2:1; i=2; w=\"x1x\"]";
const B: &str = "V[t=1:1,2:1; i=2; w=\"1yx10x1\"]";

fn gwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gwa-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn worked_example_text() {
    let o = gwa(&["tensor", A, B]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("t = [0:1,1:1,2:2]\n"));
    assert!(out.contains("x2  V^[0:1,1:1,2:2](i=2, w=x)"));
    assert!(out.contains("V^[0:1,1:1,2:2](i=2, w=xyx)"));
}

#[test]
fn tensor_json_round_trips() {
    let o = gwa(&["--format", "json", "tensor", A, B]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("product_t").is_some());
    let path = scratch("product.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let arg = format!("@{}", path.display());
    let again = gwa(&["--format", "json", "render", &arg]);
    assert!(again.status.success(), "{}", stderr(&again));
    let back: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(back, v["decomposition"]);
}

#[test]
fn module_json_feeds_back_in() {
    let o = gwa(&["--format", "json", "render", A]);
    assert!(o.status.success());
    let json = stdout(&o);
    let again = gwa(&["--format", "json", "render", &json]);
    assert_eq!(stdout(&again), json);
}

#[test]
fn parse_errors_exit_2_with_offset() {
    let bad = "V[t=0:1,2:1; i=2; w=\"x1z\"]";
    let o = gwa(&["tensor", bad, A]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    let offset: usize = msg
        .split("offset ")
        .nth(1)
        .and_then(|s| s.split(':').next())
        .and_then(|s| s.parse().ok())
        .expect("offset in message");
    assert_eq!(&bad[offset..offset + 1], "z");
}

#[test]
fn validation_errors_exit_3() {
    let o = gwa(&["decompose", "V[t=; i=0; w=\"x\"]"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn non_split_spectrum_exits_4_and_larger_conductor_fixes_it() {
    let m = "V[t=; w=\"11\"@1; F=[[\"-1\",1]]]";
    let o = gwa(&["--p", "1", "--conductor", "1", "decompose", m]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("enlarge the conductor"));
    let o = gwa(&["--p", "1", "--conductor", "4", "decompose", m]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("F={(z,1)}"));
}

#[test]
fn dot_is_deterministic() {
    let a = gwa(&["--format", "dot", "tensor", A, B]);
    let b = gwa(&["--format", "dot", "tensor", A, B]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dot = stdout(&a);
    assert!(dot.starts_with("digraph gwa {"));
    assert_eq!(dot.matches("subgraph cluster_").count(), 5);
    assert!(dot.contains("dir=forward"));
    assert!(dot.contains("dir=back"));
}

#[test]
fn empty_path_renders_as_single_dot() {
    let o = gwa(&["--format", "dot", "render", A]);
    assert_eq!(stdout(&o).matches("dir=both").count(), 1);
    let o = gwa(&["--format", "dot", "render", "V[t=0:1,2:1; i=2; w=\"\"]"]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("pos=").count(), 1);
    assert!(!dot.contains(" -> "));
    let o = gwa(&["--format", "svg", "render", "V[t=0:1,2:1; i=2; w=\"\"]"]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<circle").count(), 1);
    assert!(!svg.contains("<line"));
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("fig.svg");
    let o = gwa(&["--format", "svg", "--out", path.to_str().unwrap(), "tensor", A, B]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 4 + 2 + 2 + 1 + 2);
}

#[test]
fn groth_and_split_products() {
    let o = gwa(&["--conductor", "3", "groth-mul", "u[1]", "u[z]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "u[z]");
    let o = gwa(&[
        "--p",
        "2",
        "--conductor",
        "4",
        "split-mul",
        "--ring",
        "trivial",
        "u[1,2]",
        "u[z,2]",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = gwa(&[
        "--format",
        "json",
        "split-mul",
        "--ring",
        "semisimple",
        "ya[1,1]",
        "ysa[2,z]",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["product"]["terms"][0]["term"]["X"], 3);
    let o = gwa(&["split-mul", "--ring", "quotient", "u[1]", "bogus[1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hilbert_columns_agree() {
    let o = gwa(&["--format", "json", "hilbert", "--maxdeg", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], v["enumerated"]);
    assert_eq!(v["coefficients"][0], 1);
}

#[test]
fn oracle_check_matches_worked_example() {
    let o = gwa(&["oracle-check", A, B]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("MATCH"));
}

#[test]
fn unsupported_format_is_a_usage_error() {
    let o = gwa(&["--format", "dot", "hilbert"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_single_criterion() {
    let o = gwa(&["--format", "json", "selftest", "--criterion", "1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["passed"], true);
    assert_eq!(gwa(&["selftest", "--criterion", "12"]).status.code(), Some(2));
}

#[test]
fn product_json_feeds_back_in() {
    let o = gwa(&["--format", "json", "--conductor", "3", "groth-mul", "u[z]", "x[0]*y[1]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = stdout(&o);
    let again = gwa(&["--format", "json", "--conductor", "3", "groth-mul", &r, "u[1]"]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(stdout(&again), r);

    let o = gwa(&[
        "--format",
        "json",
        "--p",
        "2",
        "--conductor",
        "4",
        "split-mul",
        "--ring",
        "quotient",
        "yw[1x]",
        "u[z]",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = stdout(&o);
    let again = gwa(&[
        "--format",
        "json",
        "--p",
        "2",
        "--conductor",
        "4",
        "split-mul",
        "--ring",
        "quotient",
        &r,
        "u[1]",
    ]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(stdout(&again), r);
}

#[test]
fn graph_tensor_json_feeds_back_in() {
    let o = gwa(&[
        "--format",
        "json",
        "graph-tensor",
        A,
        "V[t=; w=\"111\"@1; F=[[\"1\",1]]]",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let g = stdout(&o);
    let again = gwa(&[
        "--format",
        "json",
        "graph-tensor",
        &g,
        "V[t=; w=\"111\"@1; F=[[\"1\",1]]]",
    ]);
    assert!(again.status.success(), "{}", stderr(&again));
    let d1 = gwa(&["--format", "json", "decompose", &g]);
    let d2 = gwa(&["--format", "json", "decompose", &stdout(&again)]);
    assert_eq!(stdout(&d1), stdout(&d2));
}
