//! Golden replay of the worked-example jobs.
//!
//! Set `TAUFORGE_BLESS=1` to rewrite the golden files after an intended
//! output change.

use std::path::PathBuf;

use serde::Deserialize;
use tauforge_cli::job::{evaluate, JobConfig};

#[derive(Deserialize)]
struct Entry {
    name: String,
    exit: i32,
}

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn entries() -> Vec<Entry> {
    serde_json::from_str(&std::fs::read_to_string(dir().join("index.json")).unwrap()).unwrap()
}

fn config(name: &str) -> JobConfig {
    JobConfig::from_json(&std::fs::read_to_string(dir().join(format!("{name}.job.json"))).unwrap()).unwrap()
}

#[test]
fn fixtures_match_golden_files() {
    let bless = std::env::var_os("TAUFORGE_BLESS").is_some();
    for e in entries() {
        let outcome = evaluate(&config(&e.name)).unwrap();
        assert_eq!(outcome.status.code(), e.exit, "{}: exit status", e.name);
        let path = dir().join(format!("{}.golden.json", e.name));
        if bless {
            std::fs::write(&path, &outcome.json).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path).unwrap();
        assert_eq!(outcome.json, golden, "{}: output drifted from the golden file", e.name);
    }
}

#[test]
fn replays_are_byte_identical() {
    for e in entries() {
        let c = config(&e.name);
        assert_eq!(evaluate(&c).unwrap().json, evaluate(&c).unwrap().json, "{}", e.name);
    }
}

#[test]
fn worked_renderings() {
    let render = |name: &str| evaluate(&config(name)).unwrap().rendering;
    assert_eq!(render("kp_det_31"), "-1/3*t1^3 + t3");
    assert_eq!(render("kp_oracle_31"), "-1/3*t1^3 + t3");
    assert_eq!(render("bkp_pf_21"), "4/3*t1^3 - 4*t3");
    assert_eq!(render("lkdv_2_N3"), "(2): -1/3*t1^3 + t3");
    assert_eq!(render("kp_t1_squared"), "t1^2");
    assert_eq!(render("kp_zero"), "0");
    assert_eq!(render("skp_worked_01"), "(0,2): 1\n(1,1): p1_1 - p2_1\n(2,0): 1");
    assert_eq!(render("skp_assignment_01"), render("skp_worked_01"));
}

#[test]
fn failing_fixture_carries_residual() {
    let out = evaluate(&config("kp_t1_squared")).unwrap();
    let report = out.report.unwrap();
    assert!(!report.passed);
    assert!(!report.residual.is_zero());
    let json: serde_json::Value = serde_json::from_str(&out.json).unwrap();
    assert!(!json["verification"]["residual"]["sectors"].as_array().unwrap().is_empty());
}
