//! λ-KdV reductions of the s-component construction.
//!
//! Block `j` contributes `k_j` consecutive rows. Row `i` of block `γ_k(i)`
//! reads `b^{(a)}_j S_{N^{(a)}_j - (σ_k(i) - 1) λ_a + 1 - σ_m(col)}(t^{(a)} + c^{(a)}_j)`,
//! i.e. the explicit s-component form with
//! `M^{(a)}_i = (σ_k(i) - 1) λ_a - N^{(a)}_j + α_i`.

use serde::{Deserialize, Serialize};

use super::skp::{skp_closed_form, step_function, SkpClosedData, StepKind};
use crate::algebra::{Partition, Rational};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::symfun::ShiftVector;

/// Block data indexed `[j][a]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLkdvSpec", into = "RawLkdvSpec")]
pub struct LkdvSpec {
    lambda: Partition,
    n: Vec<Vec<i64>>,
    b: Vec<Vec<Rational>>,
    c: Vec<Vec<ShiftVector>>,
    alpha: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawLkdvSpec {
    lambda: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<i64>>,
    #[serde(with = "crate::serial::rational_grid")]
    b: Vec<Vec<Rational>>,
    c: Vec<Vec<ShiftVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<i64>>,
}

impl TryFrom<RawLkdvSpec> for LkdvSpec {
    type Error = Error;

    fn try_from(raw: RawLkdvSpec) -> Result<Self> {
        if let Some(r) = raw.r {
            if r != raw.n.len() {
                return Err(Error::invalid(format!("r = {r} but {} blocks given", raw.n.len())));
            }
        }
        LkdvSpec::new(Partition::new(raw.lambda)?, raw.n, raw.b, raw.c, raw.alpha)
    }
}

impl From<LkdvSpec> for RawLkdvSpec {
    fn from(spec: LkdvSpec) -> Self {
        RawLkdvSpec {
            lambda: spec.lambda.parts().to_vec(),
            r: Some(spec.n.len()),
            n: spec.n,
            b: spec.b,
            c: spec.c,
            alpha: spec.alpha,
        }
    }
}

impl LkdvSpec {
    pub fn new(
        lambda: Partition,
        n: Vec<Vec<i64>>,
        b: Vec<Vec<Rational>>,
        c: Vec<Vec<ShiftVector>>,
        alpha: Option<Vec<i64>>,
    ) -> Result<Self> {
        let s = lambda.len();
        if s == 0 || lambda.parts().contains(&0) {
            return Err(Error::invalid("λ must have positive parts only"));
        }
        if n.is_empty() {
            return Err(Error::invalid("at least one block is required"));
        }
        let r = n.len();
        for (name, lens) in [
            ("N", n.iter().map(Vec::len).collect::<Vec<_>>()),
            ("b", b.iter().map(Vec::len).collect()),
            ("c", c.iter().map(Vec::len).collect()),
        ] {
            if lens.len() != r || lens.iter().any(|&x| x != s) {
                return Err(Error::invalid(format!("{name} must be a {r}×{s} grid")));
            }
        }
        if b.iter().flatten().any(num_traits::Zero::is_zero) {
            return Err(Error::invalid("b entries must be nonzero"));
        }
        let spec = LkdvSpec { lambda, n, b, c, alpha };
        let l = spec.l()?;
        if let Some(alpha) = &spec.alpha {
            if alpha.len() != l {
                return Err(Error::invalid(format!("alpha has {} entries, expected {l}", alpha.len())));
            }
        }
        Ok(spec)
    }

    /// Zero shift, unit `b`, a single block.
    pub fn simple(lambda: Partition, n: Vec<i64>) -> Result<Self> {
        let s = lambda.len();
        LkdvSpec::new(
            lambda,
            vec![n],
            vec![vec![Rational::from_integer(1.into()); s]],
            vec![vec![ShiftVector::zero(); s]],
            None,
        )
    }

    pub fn with_alpha(&self, alpha: Vec<i64>) -> Result<Self> {
        LkdvSpec::new(self.lambda.clone(), self.n.clone(), self.b.clone(), self.c.clone(), Some(alpha))
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn s(&self) -> usize {
        self.lambda.len()
    }

    pub fn r(&self) -> usize {
        self.n.len()
    }

    /// Row-block lengths: the ceilings of `(N^{(a)}_j + 1) / λ_a`, which size
    /// each block so that its last row would start below degree zero.
    pub fn block_lengths(&self) -> Result<Vec<usize>> {
        let shifted: Vec<Vec<i64>> = self
            .n
            .iter()
            .map(|row| row.iter().map(|x| x + 1).collect())
            .collect();
        lkdv_k_lengths(&self.lambda, &shifted)
    }

    pub fn l(&self) -> Result<usize> {
        Ok(self.block_lengths()?.iter().sum())
    }
}

/// `k_j = max_a ⌈N^{(a)}_j / λ_a⌉`; blocks with `k_j ≤ 0` are rejected.
pub fn lkdv_k_lengths(lambda: &Partition, n: &[Vec<i64>]) -> Result<Vec<usize>> {
    let parts = lambda.parts();
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::invalid("λ must have positive parts only"));
    }
    n.iter()
        .enumerate()
        .map(|(j, row)| {
            if row.len() != parts.len() {
                return Err(Error::invalid(format!(
                    "block {} has {} entries for {} parts",
                    j + 1,
                    row.len(),
                    parts.len()
                )));
            }
            let k = row
                .iter()
                .zip(parts)
                .map(|(&x, &lam)| x.div_euclid(lam as i64) + i64::from(x.rem_euclid(lam as i64) != 0))
                .max()
                .unwrap_or(0);
            if k <= 0 {
                return Err(Error::invalid(format!("block {} has k = {k} ≤ 0", j + 1)));
            }
            Ok(k as usize)
        })
        .collect()
}

/// Row data of the explicit s-component form realizing the reduction.
pub fn lkdv_sector_data(spec: &LkdvSpec) -> Result<SkpClosedData> {
    let k = spec.block_lengths()?;
    let l: usize = k.iter().sum();
    let s = spec.s();
    let alpha = spec.alpha.clone().unwrap_or_else(|| vec![0; l]);
    let mut b = vec![Vec::with_capacity(l); s];
    let mut m = vec![Vec::with_capacity(l); s];
    let mut c = vec![Vec::with_capacity(l); s];
    for i in 1..=l {
        let j = step_function(StepKind::Gamma, &k, i)?;
        let pos = step_function(StepKind::Sigma, &k, i)? as i64;
        for a in 0..s {
            let lam = spec.lambda.parts()[a] as i64;
            b[a].push(spec.b[j - 1][a].clone());
            m[a].push((pos - 1) * lam - spec.n[j - 1][a] + alpha[i - 1]);
            c[a].push(spec.c[j - 1][a].clone());
        }
    }
    SkpClosedData::new(s, b, m, c, alpha)
}

/// The λ-KdV tau-function of charge `l = Σ k_j`.
pub fn lkdv_tau(spec: &LkdvSpec) -> Result<FockVector> {
    skp_closed_form(&lkdv_sector_data(spec)?)
}
