//! End-to-end runs of the `tauforge` binary: exit codes, artifacts and
//! self-checks.

use std::path::Path;
use std::process::{Command, Output};

fn tauforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tauforge"))
        .args(args)
        .env("TAUFORGE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn kp_job_writes_artifact_and_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kp.json");
    let o = tauforge(&[
        "--job",
        &fixture("kp_det_31.job.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("kp.txt")).unwrap();
    assert_eq!(text, "-1/3*t1^3 + t3\n");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["verification"]["passed"], true);
    assert_eq!(json["tau"]["sectors"][0]["charge"], serde_json::json!([0]));
    assert!(stdout(&o).contains("verification: passed"));
    let o = tauforge(&["--render", out.to_str().unwrap(), "--basis", "p"]);
    assert_eq!(stdout(&o), "-1/3*p1^3 + 1/3*p3\n");
}

#[test]
fn flags_alone_build_a_bkp_job() {
    let o = tauforge(&["--hierarchy", "bkp", "--alpha", "2,1", "--basis", "t", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["rendering"], "4/3*t1^3 - 4*t3");
}

#[test]
fn negative_alpha_is_accepted() {
    let o = tauforge(&["--hierarchy", "kp", "--alpha", "-1,2", "--basis", "t"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verification_failure_exits_2_with_residual() {
    let o = tauforge(&["--job", &fixture("kp_t1_squared.job.json")]);
    assert_eq!(o.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["verification"]["passed"], false);
    assert!(!json["verification"]["residual"]["sectors"].as_array().unwrap().is_empty());
}

#[test]
fn zero_output_with_verify_exits_3() {
    let o = tauforge(&["--job", &fixture("kp_zero.job.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero vector"));
    // Without --verify a zero output is an ordinary result.
    let o = tauforge(&["--hierarchy", "kp", "--alpha", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    for args in [
        vec!["--hierarchy", "kp", "--spec", bad.to_str().unwrap()],
        vec!["--hierarchy", "kp"],
        vec!["--hierarchy", "kp", "--constructor", "q_schur", "--alpha", "1"],
        vec!["--job", bad.to_str().unwrap()],
        vec![],
    ] {
        let o = tauforge(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    std::fs::write(&bad, r#"{"A": [{"coeffs": {"0": "1"}}], "alpha": [1, 2]}"#).unwrap();
    let o = tauforge(&["--hierarchy", "kp", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exponents"));
}

#[test]
fn skp_job_from_flags() {
    let o = tauforge(&["--hierarchy", "skp", "--components", "2", "--alpha", "0,1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["rendering"], "(0,2): 1\n(1,1): t1_1 - t2_1\n(2,0): 1");
}

#[test]
fn render_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(
        &f,
        r#"{"s":1,"basis":"p","terms":[{"coeff":"1/2","mono":{"1:1":2}},{"coeff":"1/2","mono":{"1:2":1}}]}"#,
    )
    .unwrap();
    let o = tauforge(&["--render", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1/2*t1^2 + t2\n");
    let o = tauforge(&["--render", f.to_str().unwrap(), "--basis", "p"]);
    assert_eq!(stdout(&o), "1/2*p1^2 + 1/2*p2\n");
    std::fs::write(
        &f,
        r#"{"s":2,"sectors":[{"charge":[0,1],"poly":{"s":2,"terms":[{"coeff":"1","mono":{}}]}},{"charge":[1,0],"poly":{"s":2,"terms":[{"coeff":"1","mono":{}}]}}]}"#,
    )
    .unwrap();
    let o = tauforge(&["--render", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "(0,1): 1\n(1,0): 1\n");
}

#[test]
fn selfcheck_all_with_tiny_bounds() {
    let o = tauforge(&["--selfcheck", "all", "--max-degree", "2", "--max-mode", "1", "--seed", "3"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.contains("[oracles]") && text.contains("[clifford]") && text.contains("[series]"));
}

#[test]
fn selfcheck_is_deterministic() {
    let args = ["--selfcheck", "oracles", "--max-degree", "2", "--max-mode", "1", "--seed", "9"];
    assert_eq!(stdout(&tauforge(&args)), stdout(&tauforge(&args)));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = tauforge(&["--selfcheck", "everything"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}
