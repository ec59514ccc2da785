use std::process::{Command, Output};

use serde_json::Value;

fn flatdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = flatdeg(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "flatdeg/1");
    v
}

#[test]
fn analyze_examples() {
    let v = json(&["analyze", "--corpus", "f_7_4", "--k", "4"]);
    assert_eq!(v["value"], 2);
    assert_eq!(v["flats_scanned"], 94488);
    let v = json(&["analyze", "--tt", "0000", "--n", "4", "--k", "2"]);
    assert_eq!(v["value"], 0);
    let v = json(&["analyze", "--anf", "x1x2x3 ⊕ x1x4 ⊕ x2", "--k", "2", "--threshold", "1"]);
    assert_eq!(v["bad_flats"]["bad_count"], 10);
    assert_eq!(v["bad_flats"]["total"], 140);
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&flatdeg(&["analyze", "--corpus", "conj_k3", "--k", "3", "--threshold", "2"]));
    let v = json(&["analyze", "--corpus", "conj_k3", "--k", "3", "--threshold", "2"]);
    assert!(text.contains(&format!("value: {}\n", v["value"])));
    assert!(text.contains(&format!("witness: {}\n", v["witness"].as_str().unwrap())));
    assert!(text.contains("bad flats (threshold 2): 15 / 620"));
}

#[test]
fn anf_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.anf");
    std::fs::write(&path, "# plain listing\nx1x2 ⊕ x3x4\n").unwrap();
    let v = json(&["parse", "--anf-file", path.to_str().unwrap()]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["anf"], "x1x2 ⊕ x3x4");
    assert_eq!(v["nonlinearity"], 6);
    assert_eq!(v["degree"], 2);
}

#[test]
fn exhaust_examples() {
    assert_eq!(json(&["exhaust", "--n", "3", "--k", "2"])["value"], 1);
    assert_eq!(json(&["exhaust", "--n", "4", "--k", "4", "--metric", "nonlinearity"])["value"], 6);
    assert_eq!(json(&["exhaust", "--n", "2", "--k", "1"])["value"], 0);
    assert_eq!(flatdeg(&["exhaust", "--n", "5", "--k", "2"]).status.code(), Some(3));
}

#[test]
fn table_prefix_matches_reference() {
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/degree_12x6.csv")).unwrap();
    let out = stdout(&flatdeg(&["table", "--max-n", "4", "--format", "csv"]));
    for (ours, theirs) in out.lines().zip(golden.lines()) {
        let prefix: Vec<&str> = theirs.split(',').take(5).collect();
        assert_eq!(ours, prefix.join(","));
    }
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn flats_listing() {
    let out = stdout(&flatdeg(&["flats", "--n", "4", "--k", "2"]));
    assert_eq!(out.lines().count(), 140);
    assert_eq!(stdout(&flatdeg(&["flats", "--n", "7", "--k", "5", "--count"])).trim(), "10668");
    let v = json(&["flats", "--n", "4", "--k", "2", "--through", "0"]);
    assert_eq!(v["flats"].as_array().unwrap().len(), 35);
    let out = stdout(&flatdeg(&["flats", "--n", "24", "--k", "12", "--count"]));
    assert!(out.trim().len() > 20);
}

#[test]
fn search_requires_seed_and_is_deterministic() {
    assert_eq!(flatdeg(&["search", "--n", "5", "--k", "3", "-d", "1"]).status.code(), Some(2));
    let args = ["search", "--n", "5", "--k", "4", "-d", "3", "--seed", "4", "--steps", "3000"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["outcome"], b["outcome"]);
    assert_eq!(a["outcome"]["status"], "found");
    let tt = a["outcome"]["function"].as_str().unwrap();
    assert_eq!(json(&["analyze", "--tt", tt, "--k", "4"])["value"], 3);
}

#[test]
fn bounds_report() {
    let v = json(&["bounds", "--n", "11", "--k", "4"]);
    assert_eq!(v["cell"], "0 or 1");
    assert_eq!(v["result"]["lo"], 0);
    assert_eq!(v["result"]["hi"], 1);
    let v = json(&["bounds", "--n", "4", "--k", "2"]);
    assert!(v["codim_two_heuristic_log2"].as_f64().unwrap() < 0.0);
}

#[test]
fn threads_do_not_change_results() {
    let a = json(&["--threads", "1", "analyze", "--corpus", "conj_k5", "--k", "5", "--threshold", "4"]);
    let b = json(&["--threads", "3", "analyze", "--corpus", "conj_k5", "--k", "5", "--threshold", "4"]);
    assert_eq!(a["witness"], b["witness"]);
    assert_eq!(a["bad_flats"], b["bad_flats"]);
}

#[test]
fn exit_codes() {
    assert_eq!(flatdeg(&["analyze", "--anf", "x1 ⊕", "--k", "1"]).status.code(), Some(2));
    assert_eq!(flatdeg(&["analyze", "--tt", "zz", "--n", "3", "--k", "1"]).status.code(), Some(2));
    assert_eq!(
        flatdeg(&["analyze", "--corpus", "f_8_5", "--k", "5", "--budget", "1000"]).status.code(),
        Some(3)
    );
    assert_eq!(flatdeg(&["analyze", "--corpus", "nope", "--k", "1"]).status.code(), Some(4));
    assert_eq!(flatdeg(&["verify-paper", "--corpus-dir", "/nonexistent"]).status.code(), Some(4));
}

#[test]
fn verify_single_entry_and_corrupted_corpus() {
    let v = json(&["verify-paper", "--entry", "conj_k2"]);
    assert_eq!(v["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let good = "# id=t\n# n=4\n# claim=bad_flats metric=degree k=2 threshold=1 value=10 total=140\nx1x2x3 ⊕ x1x4 ⊕ x2\n";
    std::fs::write(dir.path().join("t.anf"), good).unwrap();
    let out = flatdeg(&["verify-paper", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // one term dropped from the function
    std::fs::write(dir.path().join("t.anf"), good.replace(" ⊕ x2", "")).unwrap();
    let out = flatdeg(&["verify-paper", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    std::fs::write(dir.path().join("t.anf"), "# id=t\nx1\n").unwrap();
    let out = flatdeg(&["verify-paper", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
