use std::path::Path;
use std::process::{Command, Output};

use bfsyz::homres::BettiTable;
use serde_json::Value;

fn bfsyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfsyz"))
        .args(args)
        .env_remove("BFSYZ_SEED")
        .env_remove("BFSYZ_CACHE")
        .env_remove("BFSYZ_MEM_MB")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn fh_rank_bijective() {
    let out = bfsyz(&["fh-rank", "--a", "2", "--b", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["rank"], 15);
    assert_eq!(v["result"]["injective"], true);
    assert_eq!(v["result"]["surjective"], true);
    assert_eq!(v["version"], bfsyz::VERSION);
    assert_eq!(v["params"]["a"], 2);
    assert!(v["primes"].as_array().unwrap().len() >= 2);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(bfsyz(&["fh-rank", "--a", "0", "--b", "2", "--k", "1"]).status.code(), Some(3));
    assert_eq!(bfsyz(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(bfsyz(&["hw-triple", "--a", "3"]).status.code(), Some(3));
    assert_eq!(bfsyz(&["char-check", "--a", "2", "--b", "2", "--i", "5"]).status.code(), Some(3));
}

#[test]
fn betti_of_coordinate_ideal() {
    let out = bfsyz(&["betti", "--target", "ix", "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let t = BettiTable::from_json(&v["result"]["table"]).unwrap();
    let strand: Vec<_> = (0..4).map(|i| t.get(i, i as i64 + 3)).collect();
    assert_eq!(strand, vec![Some(7), Some(10), Some(5), Some(1)]);
    assert_eq!(t.to_json(), v["result"]["table"]);
}

#[test]
fn text_table_of_maximal_ideal() {
    let out = bfsyz(&["betti", "--target", "iab", "--a", "1", "--b", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("beta_(i,i+r)"), "{text}");
    assert!(text.lines().any(|l| l == "1: 3 3 1"), "{text}");
}

#[test]
fn conjecture_scan_is_labelled_evidence() {
    let out = bfsyz(&["conjecture-scan", "--a", "2", "--b", "3", "--jmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["label"], "evidence");
    let regs: Vec<i64> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["regularity"].as_i64().unwrap()).collect();
    assert_eq!(regs, vec![3, 5, 6]);
}

#[test]
fn convention_error_exits_1() {
    let out = bfsyz(&["phi", "--a", "1", "--b", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["minors-check", "--a", "2", "--b", "2", "--mode", "modular", "--seed", "7"];
    assert_eq!(bfsyz(&args).stdout, bfsyz(&args).stdout);
}

fn run_to(dir: &Path, name: &str, cache: &Path) -> Vec<u8> {
    let path = dir.join(name);
    let cache = cache.to_str().unwrap();
    let p = path.to_str().unwrap();
    let out = bfsyz(&["fh-rank", "--a", "2", "--b", "3", "--k", "3", "--cache", cache, "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join(format!("{name}.log")).exists());
    std::fs::read(path).unwrap()
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cold = run_to(dir.path(), "cold.json", &cache);
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = run_to(dir.path(), "warm.json", &cache);
    assert_eq!(cold, warm);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bfsyz"))
        .args(["fh-rank", "--a", "1", "--b", "1", "--k", "1"])
        .env("BFSYZ_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 99);
    let out = Command::new(env!("CARGO_BIN_EXE_bfsyz"))
        .args(["fh-rank", "--a", "1", "--b", "1", "--k", "1", "--seed", "5"])
        .env("BFSYZ_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 5);
}

#[test]
fn exactness_of_buchsbaum_eisenbud() {
    let out = bfsyz(&["exactness", "--target", "be", "--a", "2", "--kmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["status"], "verified");
}
