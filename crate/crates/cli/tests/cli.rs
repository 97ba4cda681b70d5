use std::path::Path;
use std::process::{Command, Output};

fn ipolar(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipolar")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV with the manifest stripped.
fn body(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn design_32_16(dir: &Path) {
    stdout(&ipolar(&["design", "--n", "32", "--k", "16", "--out", "spec.json"], dir));
}

#[test]
fn design_reproduces_reference_set() {
    let dir = tempfile::tempdir().unwrap();
    design_32_16(dir.path());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("spec.json")).unwrap()).unwrap();
    let set: Vec<u64> = doc["unfrozen"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(set, [11, 13, 14, 15, 19, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31]);
    assert_eq!(doc["manifest"]["command"], "design");
    assert_eq!(doc["manifest"]["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn full_rate_design() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&ipolar(&["design", "--n", "8", "--k", "8"], dir.path()));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["unfrozen"].as_array().unwrap().len(), 8);
}

#[test]
fn sequence_file_matches_list_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let seq: Vec<String> = (0..16).rev().map(|i| i.to_string()).collect();
    std::fs::write(dir.path().join("seq.txt"), format!("# most reliable first\n{}\n", seq.join(", "))).unwrap();
    let out = stdout(&ipolar(&["design", "--n", "16", "--k", "5", "--sequence-file", "seq.txt"], dir.path()));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["unfrozen"], serde_json::json!([11, 12, 13, 14, 15]));
}

#[test]
fn wef_enumerate_and_bound_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    design_32_16(dir.path());
    let wef = stdout(&ipolar(&["wef", "--spec", "spec.json", "--out", "wef.csv"], dir.path()));
    assert!(wef.is_empty());
    let text = std::fs::read_to_string(dir.path().join("wef.csv")).unwrap();
    assert!(text.starts_with("# command: wef\n"));
    assert!(body(&text).contains(&"8,476.24366744366744366744,3064628/6435".to_string()));

    let polar = stdout(&ipolar(&["enumerate", "--spec", "spec.json"], dir.path()));
    let rows = body(&polar);
    assert!(rows.contains(&"8,700.00000000000000000000,700".to_string()));
    assert!(rows.contains(&"16,37126.00000000000000000000,37126".to_string()));

    let bound = stdout(&ipolar(&["bound", "--wef", "wef.csv", "--snr-db", "0:8:0.5"], dir.path()));
    let rows: Vec<(f64, f64)> = body(&bound)[1..]
        .iter()
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[1], f[2])
        })
        .collect();
    assert_eq!(rows.len(), 17);
    assert!(rows.iter().all(|&(union, simple)| simple <= union));
    assert!(rows.windows(2).all(|w| w[1].1 < w[0].1));
}

#[test]
fn concat_with_unit_p_q_and_iowef() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&ipolar(&["design", "--n", "16", "--k", "7", "--out", "spec.json"], dir.path()));
    std::fs::write(dir.path().join("outer.json"), r#"{"type": "bch", "m": 3}"#).unwrap();
    let out = stdout(&ipolar(&["concat-wef", "--spec", "spec.json", "--outer", "outer.json"], dir.path()));
    let mass: f64 = body(&out)[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((mass - 16.0).abs() < 1e-9);
    let io = stdout(&ipolar(&["iowef", "--spec", "spec.json", "--mode", "float", "--d-cap", "4"], dir.path()));
    assert!(io.contains("# input_length: 7"));
    assert!(body(&io)[0] == "w,d,coefficient");
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{
        "scheme": {"type": "ipolar", "spec": {"design": {"n": 16, "k": 8, "es_over_n0_db": 0.0}}, "interleavers": {"seed": 3}},
        "decoder": {"list_size": 4},
        "snr_db": [1.0, 2.0],
        "stop": {"min_errors": 20, "max_trials": 20000},
        "seed": 5
    }"#;
    std::fs::write(dir.path().join("scenario.json"), scenario).unwrap();
    let a = stdout(&ipolar(&["simulate", "scenario.json", "--jobs", "2"], dir.path()));
    let b = stdout(&ipolar(&["simulate", "scenario.json", "--jobs", "1"], dir.path()));
    assert_eq!(body(&a), body(&b));
    assert!(a.contains("# seed: 5"));
    let c = stdout(&ipolar(&["simulate", "scenario.json", "--seed", "6"], dir.path()));
    assert_ne!(body(&a), body(&c));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ipolar(&["design", "--n", "12", "--k", "3"], dir.path()).status.code(), Some(2));
    assert_eq!(ipolar(&["wef", "--spec", "missing.json"], dir.path()).status.code(), Some(4));
    assert_eq!(ipolar(&["bogus"], dir.path()).status.code(), Some(2));
    std::fs::write(dir.path().join("big.json"), r#"{"m_exp": 6, "k": 32, "unfrozen": [32,33,34,35,36,37,38,39,40,41,42,43,44,45,46,47,48,49,50,51,52,53,54,55,56,57,58,59,60,61,62,63]}"#).unwrap();
    let out = ipolar(&["wef", "--spec", "big.json", "--term-budget", "10"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn repro_subset() {
    let dir = tempfile::tempdir().unwrap();
    let out = ipolar(&["repro", "--only", "1,7", "--out", "report.txt"], dir.path());
    assert!(out.status.success());
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("[PASS] criterion  1"));
    assert!(report.contains("[PASS] criterion  7"));
    assert!(!report.contains("criterion  2"));
}
