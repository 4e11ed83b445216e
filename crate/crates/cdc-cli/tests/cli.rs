//! End-to-end tests of the `cdc` binary: flag handling, output formats,
//! exit-status contract, and construct -> verify round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cdc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cdc"))
}

fn run(args: &[&str]) -> Output {
    cdc().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut dir = std::env::temp_dir();
    dir.push(format!("cdc-cli-test-{}-{name}", std::process::id()));
    dir
}

#[test]
fn bound_best_values() {
    let out = run(&["bound", "--q", "2", "--n", "13", "--d", "4", "--k", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("157337054"));

    let out = run(&["bound", "--q", "2", "--n", "4", "--d", "4", "--k", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("1"));

    let out = run(&["bound", "--q", "2", "--n", "19", "--d", "6", "--k", "6"]);
    assert_eq!(stdout(&out).lines().next(), Some("4527333091203726"));
}

#[test]
fn bound_explicit_parallel_rule() {
    let out = run(&[
        "bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4", "--rule", "parallel", "--n1",
        "8", "--t", "0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("19673822"));
}

#[test]
fn bound_output_is_deterministic() {
    let args = ["bound", "--q", "2", "--n", "17", "--d", "4", "--k", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().next(), Some("644769570782"));
}

#[test]
fn bound_structured_certificate() {
    let out = run(&[
        "bound", "--q", "2", "--n", "13", "--d", "4", "--k", "4", "--cert", "structured",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("157337054"));
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(json["rule"], "ParallelLinkage");
    assert_eq!(json["value"], "157337054");
    assert!(json["params"].is_object());
    assert!(json["children"].is_array());
}

#[test]
fn bound_rejects_illegal_parameters() {
    let out = run(&["bound", "--q", "2", "--n", "4", "--d", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"));
    assert_eq!(stderr(&out).lines().count(), 1);
}

#[test]
fn bound_with_registry_file_and_env() {
    let empty = tmpfile("empty-registry.txt");
    std::fs::write(&empty, "# nothing\n").unwrap();
    // with the built-in registry the best bound for (2,8,4,4) is the
    // registry entry 4801; with an empty registry the engine still finds
    // the 4096 + 526 parallel value
    let out = run(&["bound", "--q", "2", "--n", "8", "--d", "4", "--k", "4"]);
    assert_eq!(stdout(&out).lines().next(), Some("4801"));
    let out = run(&[
        "bound",
        "--q",
        "2",
        "--n",
        "8",
        "--d",
        "4",
        "--k",
        "4",
        "--registry",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out).lines().next(), Some("4622"));
    let out = cdc()
        .env("CDC_REGISTRY", &empty)
        .args(["bound", "--q", "2", "--n", "8", "--d", "4", "--k", "4"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out).lines().next(), Some("4622"));
    std::fs::remove_file(&empty).ok();
}

#[test]
fn construct_lmrd_and_verify_roundtrip() {
    let path = tmpfile("lmrd.txt");
    let out = run(&[
        "construct", "--method", "lmrd", "--q", "2", "--n", "6", "--k", "3", "--d", "4", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "M=64 d_claimed=4\n");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("cdc q=2 n=6 k=3 d=4 M=64\n"));

    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok min_distance=4\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn construct_parallel_and_verify() {
    let path = tmpfile("parallel.txt");
    let out = run(&[
        "construct", "--method", "parallel", "--q", "2", "--n1", "2", "--n2", "2", "--k", "2",
        "--d", "2", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    // 16 first-half words plus 1 + A_1(Q_2(2,2,1)) = 10 second-half words
    assert_eq!(stdout(&out), "M=26 d_claimed=2\n");
    let out = run(&["verify", path.to_str().unwrap(), "--full"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok min_distance=2\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn construct_linkage_and_sampled_verify() {
    let path = tmpfile("linkage.txt");
    let out = run(&[
        "construct", "--method", "linkage", "--q", "2", "--n1", "4", "--n2", "3", "--k", "3",
        "--d", "2", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let line = stdout(&out);
    assert!(line.starts_with("M="), "{line}");
    let sampled = run(&[
        "verify",
        path.to_str().unwrap(),
        "--sample",
        "500",
        "--seed",
        "42",
    ]);
    assert!(sampled.status.success());
    let again = run(&[
        "verify",
        path.to_str().unwrap(),
        "--sample",
        "500",
        "--seed",
        "42",
    ]);
    assert_eq!(sampled.stdout, again.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn construct_cap_exceeded_names_the_cap() {
    let out = run(&[
        "construct", "--method", "lmrd", "--q", "2", "--n", "20", "--k", "4", "--d", "4", "--cap",
        "1024", "--out", "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap 1024"), "{}", stderr(&out));
}

#[test]
fn construct_requires_out_flag() {
    let out = run(&["construct", "--method", "lmrd", "--q", "2", "--n", "6", "--k", "3", "--d", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_duplicate_block_fails_with_distance_zero() {
    let path = tmpfile("dup.txt");
    std::fs::write(
        &path,
        "cdc q=2 n=3 k=1 d=2 M=2\n\n1 0 1\n\n1 0 1\n",
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "FAIL pair=0,1 distance=0\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_single_word_is_vacuous() {
    let path = tmpfile("single.txt");
    std::fs::write(&path, "cdc q=2 n=3 k=1 d=2 M=1\n\n1 0 1\n").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok min_distance=none\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_malformed_file_reports_line() {
    let path = tmpfile("malformed.txt");
    std::fs::write(&path, "cdc q=2 n=3 k=1 d=2 M=1\n\n1 0 x\n").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    std::fs::remove_file(&path).ok();
}

#[test]
fn rankdist_exact_output() {
    let out = run(&["rankdist", "--q", "2", "--m", "8", "--n", "4", "--d", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "r 2 8925\nr 3 956250\nr 4 15812040\ntotal 16777216\n"
    );

    let out = run(&["rankdist", "--q", "2", "--m", "10", "--n", "4", "--d", "2"]);
    assert!(stdout(&out).contains("r 4 1058084808\n"));

    let out = run(&["rankdist", "--q", "2", "--m", "3", "--n", "3", "--d", "3"]);
    assert_eq!(stdout(&out), "r 3 7\ntotal 8\n");
}

#[test]
fn table_formats_agree() {
    let csv = run(&[
        "table", "--q", "2", "--n", "12..13", "--d", "4", "--k", "4", "--format", "csv",
    ]);
    assert!(csv.status.success());
    let csv_text = stdout(&csv);
    let mut lines = csv_text.lines();
    assert_eq!(lines.next(), Some("q,n,d,k,value,rule"));
    let row12 = lines.next().unwrap();
    let row13 = lines.next().unwrap();
    assert!(row12.starts_with("2,12,4,4,19676797,"), "{row12}");
    assert!(row13.starts_with("2,13,4,4,157337054,"), "{row13}");

    let md = run(&[
        "table", "--q", "2", "--n", "12-13", "--d", "4", "--k", "4", "--format", "markdown",
    ]);
    let md_text = stdout(&md);
    assert!(md_text.contains("| 19676797 |"));
    assert!(md_text.contains("| 157337054 |"));

    // an empty range still prints the header
    let empty = run(&["table", "--q", "2", "--n", "", "--d", "4", "--k", "4"]);
    assert_eq!(stdout(&empty), "q,n,d,k,value,rule\n");
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());

    let out = run(&["bound", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_flag_accepted() {
    let out = run(&[
        "--threads", "2", "bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("19676797"));
}
