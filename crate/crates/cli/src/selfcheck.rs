//! `--selfcheck` suites.

use std::fmt;
use std::str::FromStr;

use tauforge::verify::{charged_clifford_suite, lemma_suite, neutral_clifford_suite, series_suite};

use crate::suites::{
    assignment_suite, bkp_oracle_suite, bkp_reduction_suite, charged_vacuum_suite, epsilon_suite,
    kp_oracle_suite, product_expansion_suite, OracleBounds, SuiteResult,
};

/// Charges `|m_a| ≤ 2` in the Clifford suites.
pub const CLIFFORD_CHARGE: i64 = 2;
/// Random specs per oracle-equality suite.
pub const ORACLE_CASES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Clifford,
    Series,
    Oracles,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "clifford" => Ok(Suite::Clifford),
            "series" => Ok(Suite::Series),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?} (clifford, series, oracles, all)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: u32,
    pub max_mode: i64,
    pub components: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_degree: 6,
            max_mode: 4,
            components: 2,
            seed: 0,
        }
    }
}

/// One printed line of a self-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {}", self.suite, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

fn from_extras(suite: &'static str, extras: Vec<tauforge::verify::Extra>) -> Vec<CheckLine> {
    extras
        .into_iter()
        .map(|e| CheckLine {
            suite,
            name: e.name,
            passed: e.passed,
            detail: e.detail,
        })
        .collect()
}

fn from_suite(suite: &'static str, r: SuiteResult) -> CheckLine {
    let mut detail = format!("{} cases", r.cases);
    for e in &r.examples {
        detail.push_str("; ");
        detail.push_str(e);
    }
    CheckLine {
        suite,
        passed: r.passed(),
        name: r.name,
        detail: Some(detail),
    }
}

pub fn clifford_lines(b: &Bounds) -> Vec<CheckLine> {
    let mut out = from_extras(
        "clifford",
        charged_clifford_suite(b.max_degree, b.max_mode, 1, CLIFFORD_CHARGE),
    );
    if b.components >= 2 {
        out.extend(from_extras(
            "clifford",
            charged_clifford_suite(b.max_degree, b.max_mode, b.components, CLIFFORD_CHARGE),
        ));
    }
    out.extend(from_extras("clifford", neutral_clifford_suite(b.max_degree, b.max_mode)));
    out
}

pub fn series_lines(b: &Bounds) -> Vec<CheckLine> {
    let mut out = from_extras("series", series_suite(b.max_degree));
    out.extend(from_extras("series", lemma_suite(b.max_degree, b.max_degree)));
    out
}

/// The random spec ranges shrink with the bounds so that tiny bounds run
/// quickly; the defaults give the full ranges.
pub fn oracle_bounds(b: &Bounds) -> OracleBounds {
    let full = OracleBounds::default();
    OracleBounds {
        support: full.support.min(b.max_mode.max(0)),
        alpha_lo: full.alpha_lo,
        alpha_hi: full.alpha_hi.min(b.max_degree as i64),
        max_l: full.max_l,
    }
}

pub fn oracle_lines(b: &Bounds) -> Vec<CheckLine> {
    let ob = oracle_bounds(b);
    let hi = (b.max_degree as i64).min(3);
    vec![
        from_suite("oracles", kp_oracle_suite(b.seed, ORACLE_CASES, ob)),
        from_suite("oracles", bkp_oracle_suite(b.seed, ORACLE_CASES, ob)),
        from_suite("oracles", bkp_reduction_suite(b.seed, ORACLE_CASES / 2, ob)),
        from_suite("oracles", epsilon_suite(b.components.max(2), 6)),
        from_suite("oracles", product_expansion_suite(b.components.max(2), 3, -1, hi)),
        from_suite("oracles", charged_vacuum_suite((-2, 2), 3, -2, hi)),
        from_suite("oracles", assignment_suite(b.seed, ORACLE_CASES / 2)),
    ]
}

pub fn run_selfcheck(suite: Suite, bounds: &Bounds) -> Vec<CheckLine> {
    match suite {
        Suite::Clifford => clifford_lines(bounds),
        Suite::Series => series_lines(bounds),
        Suite::Oracles => oracle_lines(bounds),
        Suite::All => {
            let mut out = series_lines(bounds);
            out.extend(clifford_lines(bounds));
            out.extend(oracle_lines(bounds));
            out
        }
    }
}
