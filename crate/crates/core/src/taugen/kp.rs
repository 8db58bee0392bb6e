//! KP coefficients `T_α = det[T_{i;α_i+1-j}]` of `Π A_i(u_i) H(u_i) Π_{i<j}(u_j - u_i)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::series_coeff;
use crate::algebra::{LaurentPoly, Poly, PolyMatrix, Rational};
use crate::error::{Error, Result};
use crate::fock::{apply_psi_sum, ChargeVector, FockVector, ModeIndex, Sign};
use crate::symfun::{shifted_elementary_schur, SeriesKind, ShiftVector};

/// Rows `A_1, ..., A_l` and the exponent vector `α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawKpSpec", into = "RawKpSpec")]
pub struct KpSpec {
    a: Vec<LaurentPoly>,
    alpha: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawKpSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(rename = "A")]
    a: Vec<LaurentPoly>,
    alpha: Vec<i64>,
}

impl TryFrom<RawKpSpec> for KpSpec {
    type Error = Error;

    fn try_from(raw: RawKpSpec) -> Result<Self> {
        if let Some(l) = raw.l {
            if l != raw.a.len() {
                return Err(Error::invalid(format!("l = {l} but {} rows given", raw.a.len())));
            }
        }
        KpSpec::new(raw.a, raw.alpha)
    }
}

impl From<KpSpec> for RawKpSpec {
    fn from(spec: KpSpec) -> Self {
        RawKpSpec {
            l: Some(spec.a.len()),
            a: spec.a,
            alpha: spec.alpha,
        }
    }
}

/// Shared validation for the single-index-row specs.
pub(crate) fn check_rows(a: &[LaurentPoly], alpha: &[i64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::invalid("at least one row is required"));
    }
    if a.len() != alpha.len() {
        return Err(Error::invalid(format!(
            "{} Laurent polynomials but {} exponents",
            a.len(),
            alpha.len()
        )));
    }
    if let Some(i) = a.iter().position(LaurentPoly::is_zero) {
        return Err(Error::invalid(format!("row {} has A = 0", i + 1)));
    }
    Ok(())
}

impl KpSpec {
    pub fn new(a: Vec<LaurentPoly>, alpha: Vec<i64>) -> Result<Self> {
        check_rows(&a, &alpha)?;
        Ok(KpSpec { a, alpha })
    }

    pub fn l(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[LaurentPoly] {
        &self.a
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn with_alpha(&self, alpha: Vec<i64>) -> Result<Self> {
        KpSpec::new(self.a.clone(), alpha)
    }
}

/// `T_{;k} = Σ_j A_j h_{k-j}` in component `a` of an `s`-component ring.
pub fn series_coeff_t(a_poly: &LaurentPoly, s: usize, a: usize, k: i64) -> Result<Poly> {
    crate::symfun::check_component(s, a)?;
    Ok(series_coeff(SeriesKind::H, a_poly, s, a, k))
}

/// `det[T_{i;α_i+1-j}]_{i,j=1..l}`.
pub fn kp_coeff_det(spec: &KpSpec) -> Result<Poly> {
    let l = spec.l();
    let m = PolyMatrix::from_fn(1, l, |i, j| {
        series_coeff(SeriesKind::H, &spec.a[i], 1, 1, spec.alpha[i] - j as i64)
    })?;
    m.det()
}

/// `z^{-l} X_l ... X_1 (1)` with `X_j = Σ_n [u^{α_j+n}]A_j ψ^+[n]`.
pub fn kp_coeff_oracle(spec: &KpSpec) -> Result<Poly> {
    let mut v = FockVector::vacuum(1);
    for (a, &alpha) in spec.a.iter().zip(&spec.alpha) {
        let terms: Vec<(ModeIndex, Rational)> = a
            .iter()
            .map(|(k, c)| (ModeIndex(k - alpha), c.clone()))
            .collect();
        v = apply_psi_sum(Sign::Plus, 1, &terms, &v)?;
        if v.is_zero() {
            return Ok(Poly::zero(1));
        }
    }
    let charge = ChargeVector(vec![spec.l() as i64]);
    if v.num_sectors() != 1 || v.get(&charge).is_none() {
        return Err(Error::invalid("mode product left the expected charge sector"));
    }
    Ok(v.get(&charge).cloned().unwrap_or_else(|| Poly::zero(1)))
}

/// `(Π b_i) det[S_{α_i - M_i + 1 - j}(t + c_i)]`.
pub fn kp_closed_form(
    b: &[Rational],
    m: &[i64],
    c: &[ShiftVector],
    alpha: &[i64],
) -> Result<Poly> {
    let l = alpha.len();
    if l == 0 || b.len() != l || m.len() != l || c.len() != l {
        return Err(Error::invalid(format!(
            "closed form needs equal nonzero lengths, got b={} M={} c={} alpha={l}",
            b.len(),
            m.len(),
            c.len()
        )));
    }
    if b.iter().any(Zero::is_zero) {
        return Err(Error::invalid("closed form requires nonzero b"));
    }
    let mut rows = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let k = alpha[i] - m[i] - j as i64;
            row.push(shifted_elementary_schur(k, &c[i], 1, 1)?.scale(&b[i]));
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(1, rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::symfun::elementary_schur;

    fn ones(l: usize, alpha: Vec<i64>) -> KpSpec {
        KpSpec::new(vec![LaurentPoly::one(); l], alpha).unwrap()
    }

    fn t(n: u32) -> Poly {
        Poly::var(1, 1, n).scale(&rat(1, n as i64))
    }

    #[test]
    fn series_coefficients() {
        let h2 = elementary_schur(2, 1, 1).unwrap();
        assert_eq!(series_coeff_t(&LaurentPoly::one(), 1, 1, 2).unwrap(), h2);
        assert!(series_coeff_t(&LaurentPoly::monomial(3, int(1)), 1, 1, 2).unwrap().is_zero());
        let a = LaurentPoly::from_coeffs([(0, int(1)), (1, int(1))]);
        assert_eq!(series_coeff_t(&a, 1, 1, 1).unwrap(), t(1) + Poly::one(1));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(kp_coeff_det(&ones(2, vec![0, 1])).unwrap(), Poly::one(1));
        assert_eq!(kp_coeff_det(&ones(2, vec![1, 0])).unwrap(), -Poly::one(1));
        let expect = t(3) - t(1).pow(3).scale(&rat(1, 3));
        assert_eq!(kp_coeff_det(&ones(2, vec![3, 1])).unwrap(), expect);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            kp_coeff_oracle(&ones(1, vec![2])).unwrap(),
            elementary_schur(2, 1, 1).unwrap()
        );
        for alpha in [vec![0, 1], vec![3, 1], vec![1, 0], vec![2, 2, -1]] {
            let spec = ones(alpha.len(), alpha);
            assert_eq!(kp_coeff_oracle(&spec).unwrap(), kp_coeff_det(&spec).unwrap());
        }
    }

    #[test]
    fn closed_form_examples() {
        let z = ShiftVector::zero();
        let one = int(1);
        assert_eq!(
            kp_closed_form(&[one.clone()], &[0], &[z.clone()], &[3]).unwrap(),
            elementary_schur(3, 1, 1).unwrap()
        );
        let two = kp_closed_form(&[one.clone(), one.clone()], &[0, 0], &[z.clone(), z.clone()], &[3, 1]).unwrap();
        assert_eq!(two, kp_coeff_det(&ones(2, vec![3, 1])).unwrap());
        let scaled = kp_closed_form(&[int(5), one], &[0, 0], &[z.clone(), z], &[3, 1]).unwrap();
        assert_eq!(scaled, two.scale(&int(5)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(KpSpec::new(vec![], vec![]).is_err());
        assert!(KpSpec::new(vec![LaurentPoly::one()], vec![1, 2]).is_err());
        assert!(KpSpec::new(vec![LaurentPoly::zero()], vec![1]).is_err());
    }
}
