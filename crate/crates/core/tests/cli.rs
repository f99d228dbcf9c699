mod common;

use std::process::{Command, Output};

use serde_json::Value;

use common::input_path;

fn quadric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadric")).args(args).output().expect("spawn quadric")
}

fn run_json(name: &str, extra: &[&str]) -> (Value, i32) {
    let path = input_path(name);
    let mut args = vec!["run", path.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let out = quadric(&args);
    let json = serde_json::from_slice(&out.stdout).expect("json report");
    (json, out.status.code().unwrap())
}

#[test]
fn skew_quadric_report() {
    let (r, code) = run_json("skew_quadric.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"]["isolated"], true);
    assert_eq!(r["end"]["dim"], 4);
    assert_eq!(r["idempotents"]["status"], "found");
    assert_eq!(r["classification"]["summands"].as_array().unwrap().len(), 4);
    assert_eq!(r["cross_check"]["agree"], true);
    assert!(r["failure"].is_null());
}

#[test]
fn json_is_deterministic() {
    let path = input_path("skew_quadric.txt");
    let args = ["run", path.to_str().unwrap(), "--json", "--seed", "3"];
    assert_eq!(quadric(&args).stdout, quadric(&args).stdout);
}

#[test]
fn text_report_names_the_verdict() {
    let path = input_path("double_line.txt");
    let out = quadric(&["run", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("isolated"), "{text}");
}

#[test]
fn non_isolated_skips_idempotents() {
    let (r, code) = run_json("double_line.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"]["isolated"], false);
    assert_eq!(r["end"]["radical_dim"], 1);
    assert_eq!(r["idempotents"]["status"], "skipped");
}

#[test]
fn rational_node_warns_non_split() {
    let (r, code) = run_json("node_rational.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"]["isolated"], true);
    assert_eq!(r["idempotents"]["status"], "non-split");
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn stage_flag_stops_early() {
    let (r, code) = run_json("skew_quadric.txt", &["--stage", "end-m"]);
    assert_eq!(code, 0);
    assert_eq!(r["end"]["dim"], 4);
    assert!(r["verdict"].is_null());
    assert!(r["idempotents"].is_null());
}

#[test]
fn skip_qp_check_warns() {
    let path = input_path("node_gaussian.txt");
    let out = quadric(&["run", path.to_str().unwrap(), "--skip-qp-check"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("WARNING"));
}

#[test]
fn bad_inputs() {
    let out = quadric(&["run", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("quadric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cubic = dir.join("cubic.txt");
    std::fs::write(&cubic, "field = Q\nvars = x, y\nrel = x*y*x\ncentral = x*x\n").unwrap();
    let out = quadric(&["run", cubic.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["failure"]["stage"], "parse");

    let dependent = dir.join("dependent.txt");
    std::fs::write(&dependent, "field = Q\nvars = x, y\nrel = x*y - y*x\ncentral = y*x - x*y\n").unwrap();
    let out = quadric(&["run", dependent.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["failure"]["stage"], "centrality");

    let out = quadric(&["run", cubic.to_str().unwrap(), "--stage", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
