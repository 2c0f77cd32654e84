use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn esakia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esakia")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const THREE_CHAIN: &str = r#"{"kind":"birkhoff","poset":{"n":2,"covers":[[0,1]]}}"#;

#[test]
fn classify_three_chain() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "three_chain.json", THREE_CHAIN);
    let v = json(&esakia(&["classify", "--lattice", &f]));
    assert_eq!(v["regular"], false);
    assert_eq!(v["stably_compact"], true);
    assert_eq!(v["position"], "StKFrm / StKLPries / StKSp");
    assert_eq!(v["sides_agree"], true);
}

#[test]
fn classify_omega() {
    let v = json(&esakia(&["chain", "classify", "--shape", "W"]));
    assert_eq!(v["continuous"], true);
    assert_eq!(v["compact"], false);
    assert_eq!(v["spatial"], true);
    let v = json(&esakia(&["classify", "--shape", r#"{"blocks":[{"omega":true},{"fin":1}]}"#]));
    assert_eq!(v["stably_compact"], true);
    assert_eq!(v["regular"], false);
}

#[test]
fn dual_of_dual_is_the_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "l.json", r#"{"kind":"birkhoff","poset":{"n":3,"covers":[[0,2],[1,2]]}}"#);
    let space = dir.path().join("x.json");
    let out = esakia(&["dual", "--in", &src, "--out", space.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let x: Value = serde_json::from_str(&std::fs::read_to_string(&space).unwrap()).unwrap();
    assert_eq!(x["kind"], "priestley");
    assert_eq!(x["n"], 3);
    let back = json(&esakia(&["dual", "--in", space.to_str().unwrap()]));
    assert_eq!(back["kind"], "tables");
    assert_eq!(back["n"], 5);
    let again = write(dir.path(), "back.json", &back.to_string());
    let a = json(&esakia(&["classify", "--in", &src]));
    let b = json(&esakia(&["classify", "--in", &again]));
    assert_eq!(a, b);
}

#[test]
fn points_of_a_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "three_chain.json", THREE_CHAIN);
    let v = json(&esakia(&["pt", "--in", &f]));
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    assert_eq!(v["space"]["kind"], "alexandroff");
}

#[test]
fn release_gate_sweep() {
    let out = esakia(&["laws", "--max-size", "4", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failedLaws"], 0);
    assert_eq!(v["corpus"]["homs"], 19_702);
    for law in v["laws"].as_array().unwrap() {
        assert_eq!(law["failed"], 0, "{}", law["lawId"]);
        assert_eq!(law["durationMs"], 0);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["laws", "--max-size", "3", "--hom-budget", "50", "--seed", "9", "--no-timing"];
    let (a, b) = (esakia(&args), esakia(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["corpus"]["config"]["seed"], 9);
}

#[test]
fn nonproper_search() {
    let v = json(&esakia(&["search", "--claim", "nonproper-hom"]));
    assert_eq!(v["certificates"][0]["scope"], "finite");
    assert_eq!(v["witness"]["data"]["term"]["op"], "sat");
    let out = esakia(&["search", "--claim", "nonproper-hom", "--no-chains", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exhausted finite") && text.contains("no witness"), "{text}");
}

#[test]
fn chain_subcommands() {
    let v = json(&esakia(&["chain", "dual", "--shape", "W"]));
    assert_eq!(v["nonlocalicPoints"], 1);
    assert_eq!(v["localicDense"], true);
    let out = esakia(&["chain", "truncate", "--shape", "W,F2,W", "--depth-window", "4..7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&esakia(&["chain", "morphism", "--term", r#"{"op":"sat","shape":"W"}"#]));
    assert_eq!(v["proper"], false);
    assert_eq!(v["properWitness"][0], "0:1");
    assert_eq!(v["profile"]["kernel_preimage"], false);
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "three_chain.json", THREE_CHAIN);
    for extra in [&[][..], &["--dual"][..]] {
        let mut args = vec!["export-dot", "--in", f.as_str()];
        args.extend_from_slice(extra);
        let out = esakia(&args);
        assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph"));
    }
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(esakia(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(esakia(&["chain", "classify", "--shape", "F0"]).status.code(), Some(2));
    assert_eq!(esakia(&["dual", "--in", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(esakia(&["laws", "--max-size", "9"]).status.code(), Some(2));
    assert_eq!(esakia(&["search", "--claim", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(esakia(&["chain", "truncate", "--shape", "W", "--depth-window", "2..9"]).status.code(), Some(2));
}
