//! Exact residuals of the bilinear identities and operator-relation suites.

mod bilinear;
mod relations;

pub use bilinear::{
    omega_residual, verify_bkp, verify_bkp_with, verify_kp, verify_kp_with, verify_lkdv,
    verify_lkdv_with, verify_skp, verify_skp_with, VerifyOptions,
};
pub use relations::{
    basis_monomials, charged_clifford_suite, lemma_suite, neutral_clifford_suite,
    odd_basis_monomials, selfcheck_relations, series_suite,
};

use serde::Serialize;

use crate::fock::TensorFockVector;

/// Which identity a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identity {
    #[serde(rename = "KP")]
    Kp,
    #[serde(rename = "BKP")]
    Bkp,
    #[serde(rename = "SKP")]
    Skp,
    #[serde(rename = "LKDV")]
    Lkdv,
    #[serde(rename = "RELATIONS")]
    Relations,
}

/// Summation range of the mode index `n` (fermion index `n - 1/2` for the
/// charged families) used for one component of one operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeRange {
    pub operator: String,
    pub component: usize,
    pub lo: i64,
    pub hi: i64,
}

/// A named sub-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extra {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Extra {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Extra {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Outcome of a verifier. `passed` holds iff the residual is empty and every
/// extra passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub passed: bool,
    pub residual: TensorFockVector,
    pub extras: Vec<Extra>,
    pub mode_ranges: Vec<ModeRange>,
}

impl VerificationReport {
    pub(crate) fn new(
        identity: Identity,
        residual: TensorFockVector,
        extras: Vec<Extra>,
        mode_ranges: Vec<ModeRange>,
    ) -> Self {
        let passed = residual.is_zero() && extras.iter().all(|e| e.passed);
        VerificationReport {
            identity,
            passed,
            residual,
            extras,
            mode_ranges,
        }
    }

    pub fn extra(&self, name: &str) -> Option<&Extra> {
        self.extras.iter().find(|e| e.name == name)
    }

    /// Names of failing extras.
    pub fn failures(&self) -> Vec<&str> {
        self.extras
            .iter()
            .filter(|e| !e.passed)
            .map(|e| e.name.as_str())
            .collect()
    }
}
