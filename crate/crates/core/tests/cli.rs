use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equistream"));
    cmd.env_remove("EQUISTREAM_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn eval_prop1() {
    let dir = TempDir::new().unwrap();
    let five = write(dir.path(), "five.json", r#"{"finite":[0,1,2,3,4]}"#);
    let x = write(dir.path(), "x.json", r#"{"kind":"ep","pre":[],"per":["1","0"]}"#);
    let out = run(&["eval", "--swf", "prop1", "--domain", &five, "--stream", &x]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["value"], "-17/24");
    assert_eq!(v["approx"], -0.7083);
    assert_eq!(v["version"], 1);

    let out = run(&["eval", "--swf", "min", "--stream", &x, "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("value") && l.ends_with(" 0")), "{text}");
}

#[test]
fn witness_search_and_validation() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "x.json", r#"{"kind":"ep","per":["1","2","4"]}"#);
    let y = write(dir.path(), "y.json", r#"{"kind":"ep","per":["0","3","4"]}"#);
    let out = run(&["witness", "--axiom", "GE", "--x", &x, "--y", &y, "--depth", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["status"], "verified (periodic)");
    assert_eq!(v["direction"], "y < x");
    assert_eq!(v["pairing"]["period"], 3);

    let alpha = write(dir.path(), "alpha.json", r#"{"pairs":[[1,2]],"period":3,"window":3}"#);
    let out = run(&["witness", "--axiom", "IE", "--x", &x, "--y", &y, "--pairing", &alpha]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["witness", "--axiom", "WE", "--x", &x, "--y", &y]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_out(&out)["verified"], false);
}

#[test]
fn representation_limits_exit_3() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "x.json", r#"{"kind":"trunc","values":["0","5","2"]}"#);
    let y = write(dir.path(), "y.json", r#"{"kind":"trunc","values":["1","4","2"]}"#);
    let out = run(&["witness", "--axiom", "GE", "--x", &x, "--y", &y, "--depth", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["witness", "--axiom", "GE", "--x", &x, "--y", &y, "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["compare", "--depth", "10", "--window", "2", &x, &y]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_leximin() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "x.json", r#"{"kind":"ep","per":["1","0"]}"#);
    let y = write(dir.path(), "y.json", r#"{"kind":"ep","per":["0","1"]}"#);
    let out = run(&["compare", "--swr", "leximin", "--depth", "50", "--window", "10", &x, &y]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["verdict"]["relation"], "StrictlyGreater");
    assert_eq!(v["verdict"]["certified"], true);
}

#[test]
fn classify_domain() {
    let dir = TempDir::new().unwrap();
    let d = write(
        dir.path(),
        "d.json",
        r#"{"finite":[],"chains":[{"dir":"dec","form":"1/(n+2)","limit":"0"}]}"#,
    );
    let out = run(&["classify", "--domain", &d]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["class"], "OmegaStar");
}

#[test]
fn malformed_input_reports_position() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "x.json", "{\"kind\":\"ep\",\n  \"per\":[\"1/0\"]}");
    let out = run(&["eval", "--swf", "min", "--stream", &x]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["construct", "--name", "ex9"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--swf", "nope"]).status.code(), Some(2));
}

#[test]
fn construct_ex1_round_trips_through_witness() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("ex1");
    let out_str = out_dir.to_str().unwrap();
    let out = run(&["construct", "--name", "ex1", "--depth", "400", "--out", out_str]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["passed"], true);
    let notes = v["transcript"]["notes"].to_string();
    assert!(notes.contains("relation inconsistent on this domain"), "{notes}");

    let x = out_dir.join("x.json");
    let y = out_dir.join("y.json");
    let (x, y) = (x.to_str().unwrap(), y.to_str().unwrap());
    let mut directions = Vec::new();
    for p in ["alpha", "beta"] {
        let pairing = out_dir.join(format!("pairing_{p}.json"));
        let out = run(&["witness", "--axiom", "WE", "--x", x, "--y", y, "--pairing", pairing.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{p}");
        directions.push(json_out(&out)["direction"].clone());
    }
    assert_eq!(directions, vec!["x < y", "y < x"]);
    let transcript: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("transcript.json")).unwrap()).unwrap();
    assert_eq!(transcript["version"], 1);
}

#[test]
fn construct_theorem_chain() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("thm1");
    let out = run(&[
        "construct", "--name", "thm1", "--r", "1/3", "--s", "1/2", "--depth", "600", "--values",
        "0,1,2,3", "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for f in ["x_r.json", "y_r.json", "y_prime.json", "x_s.json", "pairing_beta.json"] {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    // Emitted streams are accepted unchanged by the other commands.
    let y = out_dir.join("y_r.json");
    let out = run(&["eval", "--swf", "min", "--stream", y.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "min needs an eventually periodic stream");
    let x = out_dir.join("x_r.json");
    let out = run(&["compare", "--depth", "600", "--window", "100", x.to_str().unwrap(), y.to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0 | 1 | 3)));
    json_out(&out);

    let out = run(&["construct", "--name", "thm2", "--r", "3/5", "--s", "2/3", "--depth", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn audit_seed_precedence() {
    let dir = TempDir::new().unwrap();
    let d = write(dir.path(), "d.json", r#"{"finite":[0,1,2,3,4]}"#);
    let cfg = write(dir.path(), "c.toml", "seed = 7\ntrials = 20\n");
    let base = ["audit", "--subject", "min", "--axiom", "WE", "--domain", &d, "--config", &cfg];

    let out = run(&base);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!((v["seed"].as_u64(), v["trials"].as_u64()), (Some(7), Some(20)));

    let out = bin().args(base).env("EQUISTREAM_SEED", "11").output().unwrap();
    assert_eq!(json_out(&out)["seed"], 11);

    let out = bin().args(base).args(["--seed", "13"]).env("EQUISTREAM_SEED", "11").output().unwrap();
    assert_eq!(json_out(&out)["seed"], 13);
}

#[test]
fn audit_reports_violations() {
    let dir = TempDir::new().unwrap();
    let d = write(dir.path(), "d.json", r#"{"finite":[0,1,2,3,4]}"#);
    let cfg = write(dir.path(), "c.json", r#"{"trials":200,"seed":3}"#);
    let out = run(&["audit", "--subject", "prop1", "--axiom", "AN", "--domain", &d, "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_out(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    let out = run(&["audit", "--subject", "prop1", "--axiom", "GE", "--domain", &d, "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
}
