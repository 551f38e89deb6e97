use std::process::{Command, Output};

use serde_json::Value;

fn qorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qorbit"))
        .args(args)
        .env_remove("QORBIT_OUT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ybe_passes() {
    let out = qorbit(&["verify", "ybe", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["check"], "ybe");
    assert_eq!(v[0]["ok"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qorbit(&["orbit", "--n", "3", "--comp", "1,1", "--mu", "0,1", "--deg", "2"]).status.code(), Some(2));
    assert_eq!(qorbit(&["verify", "pbw", "--n", "4", "--d", "4"]).status.code(), Some(2));
    assert_eq!(qorbit(&["centrality", "--n", "2", "--q", "0"]).status.code(), Some(2));
    assert_eq!(qorbit(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qorbit(&["theta", "--comp", "x,y"]).status.code(), Some(2));
}

#[test]
fn orbit_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.json");
    let out = qorbit(&[
        "orbit", "--n", "2", "--comp", "1,1", "--mu", "0,1", "--deg", "3", "--points", "1",
        "--report", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["spec", "quantum_profile", "classical_profile", "flat", "trace_values", "witnesses"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["quantum_profile"], serde_json::json!([1, 4, 9, 16]));
    assert_eq!(v["flat"], true);
}

#[test]
fn markdown_has_profile_table() {
    let out = qorbit(&["--format", "markdown", "orbit", "--n", "2", "--comp", "2", "--mu", "0", "--deg", "2", "--points", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| degree | quantum | classical |"));
    assert!(text.contains("| 2 | 1 | 1 | ✓ |"));
}

#[test]
fn run_all_writes_reports_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{ "batteries": ["ybe", "hecke", "characters"], "n_range": [2, 3], "theta_n_max": 3, "theta_k_max": 2 }"#).unwrap();
    let mut runs = Vec::new();
    for i in 0..2 {
        let out_dir = dir.path().join(format!("out{i}"));
        let out = qorbit(&["run-all", "--config", config.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out_dir.join("reports.md").exists());
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("reports.json")).unwrap()).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["elapsed_ms"] = Value::from(0);
        }
        runs.push(v);
    }
    assert_eq!(runs[0], runs[1]);
    assert!(runs[0].as_array().unwrap().len() >= 4);
}

#[test]
fn run_all_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{ "bogus": 1 }"#).unwrap();
    assert_eq!(qorbit(&["run-all", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}
