//! s-component KP coefficients.
//!
//! Row `i` of the charge-`m` sector determinant uses the column layout where
//! the first `m_1` columns belong to component 1, the next `m_2` to
//! component 2, and so on; column `j` of block `r` carries the power
//! `σ_m(j) - 1` of `u_i`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{series_coeff, shifted_laurent};
use crate::algebra::{LaurentPoly, Poly, PolyMatrix, Rational};
use crate::error::{Error, Result};
use crate::fock::{ChargeVector, FockVector};
use crate::symfun::{shifted_elementary_schur, SeriesKind, ShiftVector};

/// `A[r][i]` is `A^{(r+1)}_{i+1}(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSkpSpec", into = "RawSkpSpec")]
pub struct SkpSpec {
    s: usize,
    a: Vec<Vec<LaurentPoly>>,
    alpha: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSkpSpec {
    s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(rename = "A")]
    a: Vec<Vec<LaurentPoly>>,
    alpha: Vec<i64>,
}

impl TryFrom<RawSkpSpec> for SkpSpec {
    type Error = Error;

    fn try_from(raw: RawSkpSpec) -> Result<Self> {
        if let Some(l) = raw.l {
            if l != raw.alpha.len() {
                return Err(Error::invalid(format!("l = {l} but {} exponents given", raw.alpha.len())));
            }
        }
        SkpSpec::new(raw.s, raw.a, raw.alpha)
    }
}

impl From<SkpSpec> for RawSkpSpec {
    fn from(spec: SkpSpec) -> Self {
        RawSkpSpec {
            s: spec.s,
            l: Some(spec.alpha.len()),
            a: spec.a,
            alpha: spec.alpha,
        }
    }
}

fn check_grid<T>(s: usize, l: usize, grid: &[Vec<T>], what: &str) -> Result<()> {
    if grid.len() != s {
        return Err(Error::invalid(format!("{what}: {} component rows for s = {s}", grid.len())));
    }
    if let Some(r) = grid.iter().position(|row| row.len() != l) {
        return Err(Error::invalid(format!(
            "{what}: component {} has {} entries, expected {l}",
            r + 1,
            grid[r].len()
        )));
    }
    Ok(())
}

impl SkpSpec {
    pub fn new(s: usize, a: Vec<Vec<LaurentPoly>>, alpha: Vec<i64>) -> Result<Self> {
        if s == 0 || alpha.is_empty() {
            return Err(Error::invalid("s and l must be positive"));
        }
        check_grid(s, alpha.len(), &a, "A")?;
        Ok(SkpSpec { s, a, alpha })
    }

    /// Every entry equal to one.
    pub fn ones(s: usize, alpha: Vec<i64>) -> Result<Self> {
        let l = alpha.len();
        SkpSpec::new(s, vec![vec![LaurentPoly::one(); l]; s], alpha)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.alpha.len()
    }

    pub fn a(&self, r: usize, i: usize) -> &LaurentPoly {
        &self.a[r - 1][i - 1]
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn with_alpha(&self, alpha: Vec<i64>) -> Result<Self> {
        SkpSpec::new(self.s, self.a.clone(), alpha)
    }

    /// `T^{(r)}_{i;k}` with 1-based `r` and `i`.
    fn t(&self, r: usize, i: usize, k: i64) -> Poly {
        series_coeff(SeriesKind::H, self.a(r, i), self.s, r, k)
    }
}

/// `ε(a_l, ..., a_1)` by the recurrence
/// `ε(a, rest) = (-1)^{#{x in rest : x < a}} ε(rest)`, `ε() = 1`.
pub fn epsilon_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for (k, &a) in seq.iter().enumerate() {
        let below = seq[k + 1..].iter().filter(|&&x| x < a).count();
        if below % 2 == 1 {
            sign = -sign;
        }
    }
    sign
}

/// Closed form: the parity of the permutation sorting `seq` into weakly
/// decreasing order times `(-1)^{Σ_{i<j} m_i m_j}`, where `m` counts entries.
pub fn epsilon_closed(seq: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] < seq[j] {
                inversions += 1;
            }
        }
    }
    let top = seq.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0i64; top + 1];
    for &a in seq {
        counts[a] += 1;
    }
    let sort_sign = if inversions % 2 == 0 { 1 } else { -1 };
    sort_sign * pair_sign(&counts)
}

/// `(-1)^{Σ_{i<j} m_i m_j}`.
fn pair_sign(m: &[i64]) -> i64 {
    let total: i64 = m.iter().sum();
    let squares: i64 = m.iter().map(|x| x * x).sum();
    // Σ_{i<j} m_i m_j = (total² - Σ m_i²) / 2
    if ((total * total - squares) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Which step function of a block decomposition to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// Position inside the block containing `x`; `σ(0) = 0`.
    Sigma,
    /// 1-based index of the block containing `x`.
    Gamma,
}

/// `σ` or `γ` for consecutive blocks of the given sizes; empty blocks
/// contain no points.
pub fn step_function(kind: StepKind, blocks: &[usize], x: usize) -> Result<usize> {
    let total: usize = blocks.iter().sum();
    if x == 0 && kind == StepKind::Sigma {
        return Ok(0);
    }
    if x == 0 || x > total {
        return Err(Error::invalid(format!("step argument {x} outside 1..={total}")));
    }
    let mut start = 0;
    for (r, &size) in blocks.iter().enumerate() {
        if x <= start + size {
            return Ok(match kind {
                StepKind::Sigma => x - start,
                StepKind::Gamma => r + 1,
            });
        }
        start += size;
    }
    unreachable!("x ≤ total is covered by some block")
}

/// All `m ∈ Z_{≥0}^s` with `|m| = l` in lexicographic order.
pub fn charge_sectors(s: usize, l: usize) -> Vec<ChargeVector> {
    fn rec(s: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<ChargeVector>) {
        if cur.len() + 1 == s {
            cur.push(left as i64);
            out.push(ChargeVector(cur.clone()));
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k as i64);
            rec(s, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        rec(s, l, &mut Vec::with_capacity(s), &mut out);
    }
    out
}

/// `(component, σ_m(j))` for each column `j` of the sector `m`.
fn column_layout(m: &ChargeVector) -> Vec<(usize, i64)> {
    let mut cols = Vec::new();
    for (r, &size) in m.0.iter().enumerate() {
        for k in 1..=size {
            cols.push((r + 1, k));
        }
    }
    cols
}

fn sector_sign(m: &ChargeVector) -> Rational {
    Rational::from_integer(pair_sign(&m.0).into())
}

/// `(-1)^{Σ_{i<j} m_i m_j} det[T^{(a_j)}_{i; α_i + 1 - σ_m(j)}]`.
pub fn skp_sector_det(spec: &SkpSpec, m: &ChargeVector) -> Result<Poly> {
    check_sector(spec.s, spec.l(), m)?;
    let cols = column_layout(m);
    let mat = PolyMatrix::from_fn(spec.s, spec.l(), |i, j| {
        let (r, sigma) = cols[j];
        spec.t(r, i + 1, spec.alpha[i] + 1 - sigma)
    })?;
    Ok(mat.det()?.scale(&sector_sign(m)))
}

fn check_sector(s: usize, l: usize, m: &ChargeVector) -> Result<()> {
    if m.len() != s || m.0.iter().any(|&x| x < 0) || m.total() != l as i64 {
        return Err(Error::invalid(format!("{m:?} is not a nonnegative charge of size {l}")));
    }
    Ok(())
}

/// `T_α` as a charge-`l` vector, one sector determinant per `m`.
pub fn skp_coeff_full(spec: &SkpSpec) -> Result<FockVector> {
    let sectors = charge_sectors(spec.s, spec.l());
    let parts: Vec<(ChargeVector, Poly)> = sectors
        .into_par_iter()
        .map(|m| skp_sector_det(spec, &m).map(|f| (m, f)))
        .collect::<Result<_>>()?;
    FockVector::from_sectors(spec.s, parts)
}

/// `Π_r det[T^{(r)}_{i;α_i+1-j}]_{i∈I_r, j=1..|I_r|}` for the assignment
/// `(a_1, ..., a_l)`, with `I_r = {i : a_i = r}`.
pub fn skp_coeff_assignment(spec: &SkpSpec, assignment: &[usize]) -> Result<Poly> {
    if assignment.len() != spec.l() {
        return Err(Error::invalid(format!(
            "assignment of length {} for l = {}",
            assignment.len(),
            spec.l()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&a| a == 0 || a > spec.s) {
        return Err(Error::ComponentOutOfRange { component: bad, s: spec.s });
    }
    let mut out = Poly::one(spec.s);
    for r in 1..=spec.s {
        let rows: Vec<usize> = (1..=spec.l()).filter(|&i| assignment[i - 1] == r).collect();
        if rows.is_empty() {
            continue;
        }
        let mat = PolyMatrix::from_fn(spec.s, rows.len(), |i, j| {
            let row = rows[i];
            spec.t(r, row, spec.alpha[row - 1] - j as i64)
        })?;
        out = &out * &mat.det()?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// `Σ ε(a_l, ..., a_1) z_{a_1} ... z_{a_l} T^{(a_l, ..., a_1)}_α` over all
/// assignments.
pub fn skp_assignment_sum(spec: &SkpSpec) -> Result<FockVector> {
    let (s, l) = (spec.s, spec.l());
    let mut out = FockVector::zero(s);
    let mut assignment = vec![1usize; l];
    loop {
        let f = skp_coeff_assignment(spec, &assignment)?;
        if !f.is_zero() {
            let rev: Vec<usize> = assignment.iter().rev().copied().collect();
            let mut charge = ChargeVector::zero(s);
            for &a in &assignment {
                charge = charge.with_delta(a, 1);
            }
            let eps = Rational::from_integer(epsilon_sign(&rev).into());
            out.add_sector(charge, f.scale(&eps))?;
        }
        // Odometer over {1..s}^l.
        let mut k = 0;
        while k < l && assignment[k] == s {
            assignment[k] = 1;
            k += 1;
        }
        if k == l {
            break;
        }
        assignment[k] += 1;
    }
    Ok(out)
}

/// Data `b^{(r)}_i`, `M^{(r)}_i`, `c^{(r)}_i` of the explicit form, indexed
/// `[component][row]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSkpClosed", into = "RawSkpClosed")]
pub struct SkpClosedData {
    s: usize,
    b: Vec<Vec<Rational>>,
    m: Vec<Vec<i64>>,
    c: Vec<Vec<ShiftVector>>,
    alpha: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSkpClosed {
    s: usize,
    #[serde(with = "crate::serial::rational_grid")]
    b: Vec<Vec<Rational>>,
    #[serde(rename = "M")]
    m: Vec<Vec<i64>>,
    c: Vec<Vec<ShiftVector>>,
    alpha: Vec<i64>,
}

impl TryFrom<RawSkpClosed> for SkpClosedData {
    type Error = Error;

    fn try_from(raw: RawSkpClosed) -> Result<Self> {
        SkpClosedData::new(raw.s, raw.b, raw.m, raw.c, raw.alpha)
    }
}

impl From<SkpClosedData> for RawSkpClosed {
    fn from(d: SkpClosedData) -> Self {
        RawSkpClosed {
            s: d.s,
            b: d.b,
            m: d.m,
            c: d.c,
            alpha: d.alpha,
        }
    }
}

impl SkpClosedData {
    pub fn new(
        s: usize,
        b: Vec<Vec<Rational>>,
        m: Vec<Vec<i64>>,
        c: Vec<Vec<ShiftVector>>,
        alpha: Vec<i64>,
    ) -> Result<Self> {
        if s == 0 || alpha.is_empty() {
            return Err(Error::invalid("s and l must be positive"));
        }
        let l = alpha.len();
        check_grid(s, l, &b, "b")?;
        check_grid(s, l, &m, "M")?;
        check_grid(s, l, &c, "c")?;
        if b.iter().flatten().any(num_traits::Zero::is_zero) {
            return Err(Error::invalid("closed form requires nonzero b"));
        }
        Ok(SkpClosedData { s, b, m, c, alpha })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.alpha.len()
    }

    pub fn with_alpha(&self, alpha: Vec<i64>) -> Result<Self> {
        SkpClosedData::new(self.s, self.b.clone(), self.m.clone(), self.c.clone(), alpha)
    }

    /// Entry `b S_{α_i - M_i + 1 - σ}(t^{(r)} + c_i)` for 1-based `r`, `i`.
    fn entry(&self, r: usize, i: usize, sigma: i64) -> Result<Poly> {
        let k = self.alpha[i - 1] - self.m[r - 1][i - 1] + 1 - sigma;
        Ok(shifted_elementary_schur(k, &self.c[r - 1][i - 1], self.s, r)?.scale(&self.b[r - 1][i - 1]))
    }

    /// The equivalent Laurent data `A^{(r)}_i = b u^M exp(Σ c_n u^n)`,
    /// truncated past the last power any coefficient reads.
    pub fn to_spec(&self) -> Result<SkpSpec> {
        let a = (0..self.s)
            .map(|r| {
                (0..self.l())
                    .map(|i| {
                        let m = self.m[r][i];
                        shifted_laurent(&self.b[r][i], m, &self.c[r][i], self.alpha[i] - m)
                    })
                    .collect()
            })
            .collect();
        SkpSpec::new(self.s, a, self.alpha.clone())
    }
}

/// Explicit tau-function: sector sums of
/// `(-1)^{Σ_{i<j} m_i m_j} det[b^{(a_j)}_i S_{α_i - M^{(a_j)}_i + 1 - σ_m(j)}(t^{(a_j)} + c^{(a_j)}_i)]`.
pub fn skp_closed_form(data: &SkpClosedData) -> Result<FockVector> {
    let sectors = charge_sectors(data.s, data.l());
    let parts: Vec<(ChargeVector, Poly)> = sectors
        .into_par_iter()
        .map(|m| {
            let cols = column_layout(&m);
            let l = data.l();
            let mut rows = Vec::with_capacity(l);
            for i in 0..l {
                let mut row = Vec::with_capacity(l);
                for &(r, sigma) in &cols {
                    row.push(data.entry(r, i + 1, sigma)?);
                }
                rows.push(row);
            }
            let det = PolyMatrix::from_rows(data.s, rows)?.det()?;
            Ok((m.clone(), det.scale(&sector_sign(&m))))
        })
        .collect::<Result<_>>()?;
    FockVector::from_sectors(data.s, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(a: usize, n: u32) -> Poly {
        Poly::var(2, a, n)
    }

    fn sector(m: &[i64], f: Poly) -> FockVector {
        FockVector::sector(ChargeVector(m.to_vec()), f).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_sign(&[1]), 1);
        assert_eq!(epsilon_sign(&[2, 1]), -1);
        assert_eq!(epsilon_sign(&[1, 2]), 1);
        assert_eq!(epsilon_closed(&[2, 1]), -1);
        assert_eq!(epsilon_closed(&[1, 2]), 1);
        assert_eq!(epsilon_sign(&[]), 1);
    }

    #[test]
    fn step_examples() {
        let sig: Vec<usize> = (1..=3).map(|x| step_function(StepKind::Sigma, &[2, 1], x).unwrap()).collect();
        assert_eq!(sig, vec![1, 2, 1]);
        let gam: Vec<usize> = (1..=3).map(|x| step_function(StepKind::Gamma, &[2, 1], x).unwrap()).collect();
        assert_eq!(gam, vec![1, 1, 2]);
        assert_eq!(step_function(StepKind::Sigma, &[2, 1], 0).unwrap(), 0);
        assert!(step_function(StepKind::Gamma, &[2, 1], 4).is_err());
        assert!(step_function(StepKind::Gamma, &[2, 1], 0).is_err());
    }

    #[test]
    fn sectors_enumerated() {
        let all = charge_sectors(2, 2);
        let raw: Vec<Vec<i64>> = all.into_iter().map(|m| m.0).collect();
        assert_eq!(raw, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(charge_sectors(3, 3).len(), 10);
    }

    #[test]
    fn assignment_examples() {
        let spec = SkpSpec::ones(2, vec![1]).unwrap();
        assert_eq!(skp_coeff_assignment(&spec, &[1]).unwrap(), p(1, 1));
        let spec = SkpSpec::ones(2, vec![0, 1]).unwrap();
        assert_eq!(skp_coeff_assignment(&spec, &[1, 2]).unwrap(), p(2, 1));
    }

    #[test]
    fn full_examples() {
        let one2 = Poly::one(2);
        let spec = SkpSpec::ones(2, vec![0]).unwrap();
        let expect = sector(&[1, 0], one2.clone()).add(&sector(&[0, 1], one2.clone())).unwrap();
        assert_eq!(skp_coeff_full(&spec).unwrap(), expect);

        let spec = SkpSpec::ones(2, vec![0, 1]).unwrap();
        let expect = sector(&[2, 0], one2.clone())
            .add(&sector(&[1, 1], p(1, 1) - p(2, 1)))
            .unwrap()
            .add(&sector(&[0, 2], one2))
            .unwrap();
        assert_eq!(skp_coeff_full(&spec).unwrap(), expect);
        assert_eq!(skp_assignment_sum(&spec).unwrap(), expect);

        let spec = SkpSpec::ones(2, vec![1]).unwrap();
        let expect = sector(&[1, 0], p(1, 1)).add(&sector(&[0, 1], p(2, 1))).unwrap();
        assert_eq!(skp_coeff_full(&spec).unwrap(), expect);
    }

    #[test]
    fn closed_form_matches_laurent_data() {
        let z = ShiftVector::zero();
        let c1 = ShiftVector::from_entries([(1, int(1)), (2, int(-2))]).unwrap();
        let data = SkpClosedData::new(
            2,
            vec![vec![int(1), int(2)], vec![int(-1), int(3)]],
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![c1.clone(), z.clone()], vec![z, c1]],
            vec![1, 2],
        )
        .unwrap();
        let spec = data.to_spec().unwrap();
        assert_eq!(skp_closed_form(&data).unwrap(), skp_coeff_full(&spec).unwrap());

        let zero = SkpClosedData::new(
            2,
            vec![vec![int(1)], vec![int(1)]],
            vec![vec![0], vec![0]],
            vec![vec![ShiftVector::zero()], vec![ShiftVector::zero()]],
            vec![0],
        )
        .unwrap();
        let one2 = Poly::one(2);
        let expect = sector(&[1, 0], one2.clone()).add(&sector(&[0, 1], one2)).unwrap();
        assert_eq!(skp_closed_form(&zero).unwrap(), expect);
    }
}
