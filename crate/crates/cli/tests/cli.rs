use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn h90(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h90"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Vec<serde_json::Value> {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn verdict_of<'a>(records: &'a [serde_json::Value], checker: &str) -> Vec<&'a str> {
    records
        .iter()
        .filter(|r| r["checker"] == checker)
        .map(|r| r["verdict"].as_str().unwrap())
        .collect()
}

#[test]
fn validate_free_block_passes() {
    let o = h90(&["validate", &fixture("free_block_p3.h90"), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let recs = json(&o);
    for axiom in ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"] {
        assert_eq!(verdict_of(&recs, axiom), vec!["pass"], "{}", axiom);
    }
}

#[test]
fn validate_corrupted_k_a_fails_at_a5_with_witness() {
    let o = h90(&["validate", &fixture("corrupted_k_a_p3.h90"), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let recs = json(&o);
    let a5 = recs.iter().find(|r| r["checker"] == "A5").unwrap();
    assert_eq!(a5["verdict"], "fail");
    assert!(a5["witness"].is_array());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.h90");
    std::fs::write(&empty, "").unwrap();
    let o = h90(&["validate", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let bad = dir.path().join("bad.h90");
    let text = std::fs::read_to_string(fixture("free_block_p2.h90")).unwrap();
    std::fs::write(&bad, text.replacen("p: 2", "p: 4", 1)).unwrap();
    let o = h90(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(code(&h90(&["validate", "/nonexistent/model.h90"])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&h90(&["backend", "ff", "--p", "4", "--q", "7"])), 2);
    assert_eq!(code(&h90(&["backend", "ff", "--p", "3", "--q", "8"])), 2);
    assert_eq!(code(&h90(&["backend", "ff", "--p", "3"])), 2);
    assert_eq!(code(&h90(&["backend", "local", "--ell", "5", "--a", "x"])), 2);
    assert_eq!(code(&h90(&["backend", "local", "--ell", "9", "--a", "u"])), 2);
    assert_eq!(code(&h90(&["backend", "local", "--ell", "5", "--a", "u", "--precision", "3"])), 2);
    assert_eq!(code(&h90(&["synth", "--p", "3", "--trials", "0"])), 2);
    assert_eq!(code(&h90(&["synth", "--p", "3", "--blocks", "4"])), 2);
    assert_eq!(code(&h90(&["check", &fixture("corrupted_k_a_p3.h90")])), 2);
    assert_eq!(code(&h90(&["oracle"])), 2);
    assert_eq!(code(&h90(&["frobnicate"])), 2);
}

#[test]
fn check_all_on_free_block() {
    for f in ["free_block_p2.h90", "free_block_p3.h90"] {
        let o = h90(&["check", &fixture(f), "--suite", "all", "--format", "json"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(json(&o).iter().all(|r| r["verdict"] != "fail"));
    }
}

#[test]
fn check_h90_on_trivial_failing() {
    let o = h90(&["check", &fixture("trivial_failing_p2.h90"), "--suite", "h90", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let recs = json(&o);
    let h = recs.iter().find(|r| r["checker"] == "h90_holds").unwrap();
    assert_eq!(h["verdict"], "fail");
    assert_eq!(h["dims"]["a"], 2);
    assert!(!h["witness"].as_array().unwrap().is_empty());
}

#[test]
fn check_criteria_on_realizable_p3() {
    let o = h90(&["check", &fixture("realizable_p3.h90"), "--suite", "criteria", "--format", "json"]);
    let recs = json(&o);
    let h = verdict_of(&recs, "h90_holds");
    let c = verdict_of(&recs, "criterion_podd");
    assert_eq!(h.len(), 1);
    assert_eq!(h, c);
    assert_eq!(verdict_of(&recs, "criterion_p2"), vec!["skipped"]);
}

#[test]
fn backend_ff_passes_every_degree() {
    let o = h90(&["backend", "ff", "--p", "3", "--q", "7", "--n-max", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(verdict_of(&json(&o), "h90_holds"), vec!["pass"; 3]);
}

#[test]
fn backend_local_degree_table() {
    let o = h90(&["backend", "local", "--ell", "5", "--a", "u", "--n-max", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let recs = json(&o);
    assert_eq!(verdict_of(&recs, "h90_holds"), vec!["fail", "pass", "pass"]);
    assert_eq!(verdict_of(&recs, "hereditary_check"), vec!["pass"]);
}

#[test]
fn backend_real_all_pass_and_dumps_tower() {
    let dir = tempfile::tempdir().unwrap();
    let o = h90(&[
        "backend",
        "real",
        "--n-max",
        "5",
        "--dump-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains(" fail "));
    assert!(dir.path().join("manifest.txt").exists());
    let degree = dir.path().join("degree_5.h90");
    assert_eq!(code(&h90(&["validate", degree.to_str().unwrap()])), 0);
}

#[test]
fn synth_realizable_p2_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let o = h90(&[
        "synth", "--p", "2", "--trials", "500", "--suite", "criteria", "--format", "json",
        "--dump-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let recs = json(&o);
    let crit = recs.iter().find(|r| r["checker"] == "criterion == h90_holds").unwrap();
    assert_eq!(crit["counts"]["pass"], 500);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn synth_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let run = || stdout(&h90(&["synth", "--p", "3", "--trials", "40", "--seed", "9", "--dump-dir", d]));
    assert_eq!(run(), run());
}

#[test]
fn synth_negative_control_dumps_replayable_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "synth", "--p", "5", "--mode", "freeform", "--blocks", "3", "--trials", "10", "--suite",
        "lemma", "--dump-dir", d,
    ];
    let o = h90(&args);
    assert_eq!(code(&o), 1);
    let mut with_flag = args.to_vec();
    with_flag.push("--expect-negative");
    assert_eq!(code(&h90(&with_flag)), 0);
    let dumped: Vec<PathBuf> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().contains("length_lemma"))
        .collect();
    assert_eq!(dumped.len(), 1);
    let replay = h90(&["check", dumped[0].to_str().unwrap(), "--suite", "lemma", "--format", "json"]);
    assert_eq!(code(&replay), 1);
    assert_eq!(verdict_of(&json(&replay), "check_length_lemma"), vec!["fail"]);
}

#[test]
fn expect_negative_on_stored_controls() {
    for f in ["negative_length_lemma_p5_v3.h90", "negative_sigmamin1_p3_v2.h90"] {
        let o = h90(&["check", &fixture(f), "--suite", "lemma", "--expect-negative"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
    let o = h90(&["check", &fixture("free_block_p2.h90"), "--suite", "lemma", "--expect-negative"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn oracle_on_dim4_fixture_agrees() {
    let o = h90(&["oracle", &fixture("realizable_p2_dim4.h90"), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let recs = json(&o);
    assert_eq!(verdict_of(&recs, "agrees with summand_condition"), vec!["pass"]);
    assert_eq!(verdict_of(&recs, "agrees with h90_holds"), vec!["pass"]);
    assert_eq!(verdict_of(&recs, "decompose == oracle_decompose"), vec!["pass"]);
}

#[test]
fn oracle_sweep_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let o = h90(&["oracle", "--p", "2", "--trials", "30", "--dump-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
