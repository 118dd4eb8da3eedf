use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use ttptw_core::fixtures::DESK5;

fn ttptw(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttptw"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(out: Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn desk5(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("desk5.ttp");
    fs::write(&p, DESK5).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_reports_feasible_json_and_solution() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let sol = dir.path().join("out.sol");
    let text = ok(ttptw(dir.path(), &["solve", "--ttp", s(&ttp), "--fe", "5000", "--seed", "3", "--solution", s(&sol)]));
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["feasible"], true);
    assert!(json["fe_used"].as_u64().unwrap() <= 5000);
    let sol_text = fs::read_to_string(&sol).unwrap();
    assert!(sol_text.starts_with("TOUR: 1"));

    let check = ok(ttptw(dir.path(), &["validate", "--ttp", s(&ttp), "--solution", s(&sol)]));
    assert!(check.contains("valid"));
}

#[test]
fn solve_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let run = || ok(ttptw(dir.path(), &["solve", "--ttp", s(&ttp), "--variant", "dsea3", "--fe", "3000", "--seed", "9"]));
    assert_eq!(run(), run());
}

#[test]
fn tiny_budget_is_accepted_and_respected() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let json: serde_json::Value =
        serde_json::from_str(&ok(ttptw(dir.path(), &["solve", "--ttp", s(&ttp), "--fe", "10"]))).unwrap();
    assert!(json["fe_used"].as_u64().unwrap() <= 10);
}

#[test]
fn budget_below_minimum_fails_with_code_2() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let out = ttptw(dir.path(), &["solve", "--ttp", s(&ttp), "--fe", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_tw_writes_family_deterministically() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let listed = ok(ttptw(dir.path(), &["gen-tw", "--ttp", s(&ttp), "--type", "b", "--seed", "4"]));
    let files: Vec<&str> = listed.lines().collect();
    assert_eq!(files.len(), 4);
    let first: Vec<Vec<u8>> = files.iter().map(|f| fs::read(f).unwrap()).collect();
    ok(ttptw(dir.path(), &["gen-tw", "--ttp", s(&ttp), "--type", "b", "--seed", "4"]));
    let second: Vec<Vec<u8>> = files.iter().map(|f| fs::read(f).unwrap()).collect();
    assert_eq!(first, second);

    let mut args = vec!["validate", "--family"];
    args.extend(files.iter().copied());
    assert!(ok(ttptw(dir.path(), &args)).contains("valid"));

    let tw = files.iter().find(|f| f.ends_with(".l1000.tw")).unwrap();
    let out = ok(ttptw(dir.path(), &["solve", "--ttp", s(&ttp), "--tw", tw, "--fe", "2000"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["instance"], "desk5-B");
}

#[test]
fn type_a_without_tour_is_an_error() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let out = ttptw(dir.path(), &["gen-tw", "--ttp", s(&ttp), "--type", "a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_rejects_a_broken_solution() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let sol = dir.path().join("bad.sol");
    fs::write(&sol, "TOUR: 1 2 2 4\nITEMS: 1 2 3 4 5 6\n").unwrap();
    let out = ttptw(dir.path(), &["validate", "--ttp", s(&ttp), "--solution", s(&sol)]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violation"));
}

#[test]
fn bench_writes_one_row_per_run() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let listed = ok(ttptw(dir.path(), &["gen-tw", "--ttp", s(&ttp), "--type", "b", "--l", "100,-100"]));
    let files: Vec<&str> = listed.lines().collect();
    let csv = dir.path().join("bench.csv");
    let mut args = vec!["bench", "--ttp", s(&ttp), "--variants", "dsea1,baseline", "--runs", "3", "--fe", "500"];
    args.extend(["--out", s(&csv), "--tw"]);
    args.extend(files.iter().copied());
    let text = ok(ttptw(dir.path(), &args));
    assert!(text.contains("average rank dsea1"));
    let body = fs::read_to_string(&csv).unwrap();
    let rows = body.lines().take_while(|l| !l.trim_matches('"').is_empty()).count();
    assert_eq!(rows, 1 + 2 * 2 * 3);
}

#[test]
fn bruteforce_prints_the_optimum() {
    let dir = TempDir::new().unwrap();
    let ttp = desk5(&dir);
    let text = ok(ttptw(dir.path(), &["bruteforce", "--ttp", s(&ttp)]));
    assert!(text.contains("CANDIDATES: 42"));
    assert!(text.contains("FEASIBLE: true"));
}

#[test]
fn synth_and_tsp_write_files() {
    let dir = TempDir::new().unwrap();
    let listed = ok(ttptw(dir.path(), &["synth", "--cities", "12", "--kind", "u", "--seed", "2"]));
    let paths: Vec<&str> = listed.lines().collect();
    assert_eq!(paths.len(), 2);
    let tour_out = dir.path().join("again.tour");
    ok(ttptw(dir.path(), &["tsp", "--ttp", paths[0], "--kicks", "5", "--out", s(&tour_out)]));
    let tour = fs::read_to_string(&tour_out).unwrap();
    assert!(tour.contains("TOUR_SECTION"));

    let listed = ok(ttptw(dir.path(), &["gen-tw", "--ttp", paths[0], "--type", "a", "--tour", paths[1]]));
    assert_eq!(listed.lines().count(), 4);
}
