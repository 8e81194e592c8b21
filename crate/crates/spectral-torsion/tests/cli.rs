//! End-to-end tests of the installed binary: exit codes, artifact
//! determinism, stable CSV headers, and the scale-invariance contract
//! observable from the command line.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectral-torsion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

#[test]
fn circle_torsion_prints_json_artifact() {
    let out = run(&["torsion", "real", "--model", "circle", "--theta", "0.25"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(artifact["tool"], "spectral-torsion");
    assert!(artifact["convention"]
        .as_str()
        .unwrap()
        .contains("logdet = -zeta'(0)"));
    let log_torsion = artifact["runs"][0]["report"]["log_torsion"].as_f64().unwrap();
    assert!(
        (log_torsion - 0.5 * 2.0f64.ln()).abs() < 1e-12,
        "log torsion at theta = 1/4 should be half log 2, got {log_torsion}"
    );
}

#[test]
fn reruns_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = |p: &Path| {
        vec![
            "torsion".into(),
            "selfdual".into(),
            "--model".into(),
            "t4".into(),
            "--theta".into(),
            "0.3,0.1,0.7,0.2".into(),
            "--output".into(),
            p.display().to_string(),
        ]
    };
    let first = bin().args(args(&path)).output().unwrap();
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let bytes1 = std::fs::read(&path).unwrap();
    let second = bin().args(args(&path)).output().unwrap();
    assert_eq!(second.status.code(), Some(0));
    let bytes2 = std::fs::read(&path).unwrap();
    assert_eq!(bytes1, bytes2, "identical invocations must write identical bytes");
    assert!(!bytes1.is_empty());
}

#[test]
fn scale_flag_leaves_torsion_and_slopes_untouched() {
    let json_for = |scale: &str| -> serde_json::Value {
        let out = run(&[
            "torsion", "selfdual", "--model", "t4", "--theta", "0.5,0,0,0", "--scale", scale,
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let a = json_for("1");
    let b = json_for("3");
    let report = |v: &serde_json::Value| v["runs"][0]["report"].clone();
    let (ra, rb) = (report(&a), report(&b));
    // scaling the spectra is invisible: identical torsion, identical
    // per-degree slopes, bit for bit
    assert_eq!(ra["log_torsion"].to_string(), rb["log_torsion"].to_string());
    let rows = |r: &serde_json::Value| r["rows"].as_array().unwrap().clone();
    for (x, y) in rows(&ra).iter().zip(rows(&rb).iter()) {
        assert_eq!(
            x["zeta_prime0"].to_string(),
            y["zeta_prime0"].to_string(),
            "per-degree slopes must not move under rescaling"
        );
        assert_eq!(y["zeta0"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn malformed_gram_exits_2_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("never.json");
    let out = run(&[
        "torsion",
        "real",
        "--model",
        "t2",
        "--gram",
        "1 2; 2 1", // symmetric but not positive definite
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("error:"));
    assert!(!path.exists(), "failed runs must not leave an output file");
}

#[test]
fn unparseable_gram_exits_2() {
    let out = run(&["torsion", "real", "--model", "t2", "--gram", "1 0; 0 banana"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn torsion_csv_has_stable_header() {
    let out = run(&[
        "torsion", "real", "--model", "circle", "--theta", "0.25", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("csv should have a header row");
    assert_eq!(
        header,
        "model_id,kind,q,multiplicity,zeta0,zeta_prime0,logdet,log_torsion,error_bound"
    );
    assert!(text.lines().any(|l| l.starts_with("# convention:")));
    assert!(text.lines().any(|l| l.starts_with("# config_hash:")));
}

#[test]
fn zeta_csv_has_stable_header() {
    let out = run(&[
        "zeta", "--model", "circle", "--theta", "0.25", "--method", "hurwitz", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "model_id,q,zeta0,zeta_prime0,error_bound,method");
    assert!(text.contains("hurwitz"));
}

#[test]
fn zeta_rejects_sweeps() {
    let out = run(&["zeta", "--model", "circle", "--theta", "0.2;0.3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn verify_suite_passes_and_is_deterministic() {
    let out1 = run(&["verify", "--suite", "ladder", "--seed", "7"]);
    assert_eq!(out1.status.code(), Some(0), "stderr: {}", stderr(&out1));
    let out2 = run(&["verify", "--suite", "ladder", "--seed", "7"]);
    assert_eq!(stdout(&out1), stdout(&out2), "same seed must print the same table");
    assert!(stdout(&out1).contains("3/3 checks passed"));
    assert!(!stdout(&out1).contains(" fail"));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn worker_count_does_not_change_artifacts() {
    let run_with = |threads: &str| -> String {
        let out = bin()
            .env("TORSION_THREADS", threads)
            .args(["torsion", "quaternionic", "--model", "t4", "--theta", "0.4,0.1,0.2,0.3"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        stdout(&out)
    };
    assert_eq!(run_with("1"), run_with("4"));
}

#[test]
fn config_file_supplies_settings_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "model = circle\ntheta = 0.25   # quarter twist\n").unwrap();
    let from_cfg = run(&["torsion", "real", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_cfg.status.code(), Some(0), "stderr: {}", stderr(&from_cfg));
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_cfg)).unwrap();
    let log_cfg = v["runs"][0]["report"]["log_torsion"].as_f64().unwrap();
    assert!((log_cfg - 0.5 * 2.0f64.ln()).abs() < 1e-12);

    let overridden = run(&[
        "torsion", "real", "--config", cfg.to_str().unwrap(), "--theta", "0.5",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    let log_flag = v["runs"][0]["report"]["log_torsion"].as_f64().unwrap();
    assert!(
        (log_flag - 2.0f64.ln()).abs() < 1e-12,
        "command-line flag should override the config value"
    );
}

#[test]
fn theta_sweep_produces_one_run_per_point() {
    let out = run(&["torsion", "real", "--model", "circle", "--theta", "0.25;0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    let logs: Vec<f64> = runs
        .iter()
        .map(|r| r["report"]["log_torsion"].as_f64().unwrap())
        .collect();
    assert!((logs[0] - 0.5 * 2.0f64.ln()).abs() < 1e-12);
    assert!((logs[1] - 2.0f64.ln()).abs() < 1e-12);
}
