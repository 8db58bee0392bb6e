//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Every identity is checked by exact equality over the rationals, so the
//! tolerance is zero throughout. Each criterion also carries a wall-clock
//! bound in seconds.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tauforge::algebra::{Partition, Poly, Rational};
use tauforge::fock::{ChargeVector, FockVector};
use tauforge::taugen::{lkdv_tau, LkdvSpec};
use tauforge::verify::{series_suite, verify_lkdv_with, verify_skp_with, VerificationReport, VerifyOptions};
use tauforge_cli::job::{evaluate, JobConfig};
use tauforge_cli::selfcheck::{clifford_lines, Bounds};
use tauforge_cli::suites::*;

/// Seed of every randomized suite below.
const SEED: u64 = 20_241_014;
/// Exact arithmetic: residuals must vanish identically.
const TOLERANCE: u32 = 0;

struct Criterion {
    id: u32,
    title: &'static str,
    bound: Duration,
    passed: bool,
    notes: Vec<String>,
    elapsed: Duration,
    audits: usize,
    audit_failures: usize,
}

impl Criterion {
    fn run(id: u32, title: &'static str, bound_secs: u64, body: impl FnOnce(&mut Criterion)) -> Criterion {
        let mut c = Criterion {
            id,
            title,
            bound: Duration::from_secs(bound_secs),
            passed: true,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
            audits: 0,
            audit_failures: 0,
        };
        let start = Instant::now();
        body(&mut c);
        c.elapsed = start.elapsed();
        if c.elapsed > c.bound {
            c.passed = false;
            c.notes.push("time bound exceeded".into());
        }
        c
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(what.into());
        }
    }

    /// Counts the range-extension audit of a direct verifier call.
    fn audited(&mut self, r: &VerificationReport) {
        if let Some(e) = r.extra("range_extension") {
            self.audits += 1;
            if !e.passed {
                self.audit_failures += 1;
            }
        }
    }

    fn suite(&mut self, r: SuiteResult) {
        self.audits += r.audits;
        self.audit_failures += r.audit_failures;
        if !r.passed() {
            self.passed = false;
        }
        self.notes.push(r.to_string());
    }

    fn line(&self) -> String {
        format!(
            "{} criterion {}: {} [tolerance {TOLERANCE}, {:.2}s of {}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.bound.as_secs()
        )
    }
}

fn t(n: u32) -> Poly {
    Poly::var(1, 1, n).scale(&Rational::new(1.into(), (n as i64).into()))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn criterion_1() -> Criterion {
    Criterion::run(1, "series identities up to degree 12", 5, |c| {
        for e in series_suite(12) {
            c.expect(e.passed, format!("{} failed", e.name));
            c.notes.push(format!("{} {}", if e.passed { "ok" } else { "FAILED" }, e.name));
        }
    })
}

fn criterion_2() -> Criterion {
    Criterion::run(2, "Clifford and intertwining relations, D=6, |i|<=7/2, |n|<=4, s in {1,2}", 120, |c| {
        let bounds = Bounds {
            max_degree: 6,
            max_mode: 4,
            components: 2,
            seed: SEED,
        };
        for line in clifford_lines(&bounds) {
            c.expect(line.passed, line.to_string());
            c.notes.push(line.to_string());
        }
    })
}

fn criterion_3() -> Criterion {
    Criterion::run(3, "KP: Schur polynomials pass, t1^2 fails", 60, |c| {
        c.suite(schur_kp_suite(6));
    })
}

fn criterion_4() -> Criterion {
    Criterion::run(4, "KP determinant = fermionic oracle on 100 random specs", 120, |c| {
        c.suite(kp_oracle_suite(SEED, 100, OracleBounds::default()));
    })
}

fn criterion_5() -> Criterion {
    Criterion::run(5, "BKP: q_lambda pass, Pfaffian = oracle, odd reduction", 180, |c| {
        c.suite(q_schur_bkp_suite(8, 4));
        c.suite(bkp_oracle_suite(SEED, 100, OracleBounds::default()));
        c.suite(bkp_reduction_suite(SEED, 50, OracleBounds::default()));
    })
}

fn criterion_6() -> Criterion {
    Criterion::run(6, "closed forms with random shifts pass their verifiers", 180, |c| {
        let kp = kp_closed_form_suite(SEED, 50);
        let bkp = bkp_closed_form_suite(SEED, 50);
        c.expect(kp.cases >= 50 && bkp.cases >= 50, "fewer than 50 nonzero instances");
        c.suite(kp);
        c.suite(bkp);
    })
}

fn criterion_7() -> Criterion {
    Criterion::run(7, "two-component KP", 300, |c| {
        c.suite(epsilon_suite(2, 6));
        c.suite(product_expansion_suite(2, 3, -1, 3));
        c.suite(charged_vacuum_suite((-2, 2), 3, -2, 3));
        c.suite(assignment_suite(SEED, 50));
        let built = skp_construction_suite(SEED, 50);
        c.expect(built.cases >= 50, "fewer than 50 constructor outputs");
        c.suite(built);
        let z = |m: Vec<i64>| ChargeVector(m);
        let mixed = &Poly::var(2, 1, 1) - &Poly::var(2, 2, 1);
        let worked = FockVector::from_sectors(
            2,
            [(z(vec![2, 0]), Poly::one(2)), (z(vec![1, 1]), mixed), (z(vec![0, 2]), Poly::one(2))],
        )
        .expect("worked example");
        match verify_skp_with(&worked, VerifyOptions::audited()) {
            Ok(r) => {
                c.audited(&r);
                c.expect(r.passed, "worked example z1^2 + z1 z2 (p1 - p2) + z2^2 failed");
            }
            Err(e) => c.expect(false, format!("worked example: {e}")),
        }
        c.suite(product_suite(SEED, 30));
        c.suite(translation_suite(SEED, 30));
    })
}

fn criterion_8() -> Criterion {
    Criterion::run(8, "lambda-KdV reductions", 180, |c| {
        let two = Partition::new(vec![2]).unwrap();
        let spec = LkdvSpec::simple(two.clone(), vec![3]).unwrap();
        let tau = lkdv_tau(&spec).unwrap();
        let expect = &t(3) - &t(1).pow(3).scale(&Rational::new(1.into(), 3.into()));
        let f = tau.sectors().next().map(|(_, f)| f);
        c.expect(tau.num_sectors() == 1 && f == Some(&expect), "lambda=(2), N=3 is not t3 - t1^3/3");
        if let Some(f) = f {
            c.expect(f.partial(1, 2).is_zero() && f.partial(1, 4).is_zero(), "t2 or t4 derivative nonzero");
        }
        let report = verify_lkdv_with(&tau, &two, 2, VerifyOptions::audited()).unwrap();
        c.audited(&report);
        c.expect(report.passed, "t3 - t1^3/3 fails the lambda-KdV checks");
        let s2 = &t(1).pow(2).scale(&Rational::new(1.into(), 2.into())) + &t(2);
        let s2 = FockVector::sector(ChargeVector(vec![0]), s2).unwrap();
        let report = verify_lkdv_with(&s2, &two, 2, VerifyOptions::audited()).unwrap();
        c.audited(&report);
        c.expect(
            report.extra("omega_0").is_some_and(|e| e.passed)
                && report.extra("derivative_1").is_some_and(|e| !e.passed)
                && !report.passed,
            "S_(2) does not fail exactly the derivative check",
        );
        let small = lkdv_suite(SEED, 12);
        c.expect(small.cases >= 12, "too few lambda=(2,1) instances");
        c.suite(small);
    })
}

fn criterion_9() -> Criterion {
    Criterion::run(9, "closure under random finite mode sums", 180, |c| {
        for r in [kp_closure_suite(SEED, 30), bkp_closure_suite(SEED, 30), skp_closure_suite(SEED, 30)] {
            c.expect(r.cases >= 30, format!("{}: fewer than 30 instances", r.name));
            c.suite(r);
        }
    })
}

fn criterion_10(audits: usize, audit_clean: bool) -> Criterion {
    Criterion::run(10, "determinism and range-extension invariance", 120, |c| {
        let index: Vec<serde_json::Value> =
            serde_json::from_str(&std::fs::read_to_string(fixtures().join("index.json")).unwrap()).unwrap();
        for entry in &index {
            let name = entry["name"].as_str().unwrap();
            let job = std::fs::read_to_string(fixtures().join(format!("{name}.job.json"))).unwrap();
            let golden = std::fs::read_to_string(fixtures().join(format!("{name}.golden.json")));
            let config = JobConfig::from_json(&job).unwrap();
            let first = evaluate(&config).map(|o| o.json);
            let second = evaluate(&config).map(|o| o.json);
            match (first, second, golden) {
                (Ok(a), Ok(b), Ok(g)) => {
                    c.expect(a == b, format!("{name}: two runs differ"));
                    c.expect(a == g, format!("{name}: output differs from the golden file"));
                }
                _ => c.expect(false, format!("{name}: fixture could not be replayed")),
            }
        }
        c.notes.push(format!("{} fixtures replayed twice", index.len()));
        c.expect(audits > 0 && audit_clean, "range-extension audit failed somewhere");
        c.notes.push(format!("{audits} audited verifier calls in criteria 1-9"));
    })
}

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--nocapture" || a == "--verbose");
    let mut results = Vec::new();
    for run in [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ] {
        let c = run();
        println!("{}", c.line());
        if verbose || !c.passed {
            for n in &c.notes {
                println!("    {n}");
            }
        }
        results.push(c);
    }
    let audits = results.iter().map(|c| c.audits).sum();
    let audit_clean = results.iter().all(|c| c.audit_failures == 0);
    let c = criterion_10(audits, audit_clean);
    println!("{}", c.line());
    if verbose || !c.passed {
        for n in &c.notes {
            println!("    {n}");
        }
    }
    results.push(c);
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
