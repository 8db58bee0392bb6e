//! BKP coefficients: Pfaffians of pair values of
//! `Π_i A_i(u_i) Q(u_i) Π_{i<j} f(u_i, u_j)`, expanded in `|u_1| > ... > |u_l|`
//! with `f(u, v) = 1 + 2 Σ_{k≥1} (-1)^k v^k / u^k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::kp::check_rows;
use super::series_coeff;
use crate::algebra::{LaurentPoly, Poly, PolyMatrix, Rational};
use crate::error::{Error, Result};
use crate::fock::apply_phi_sum;
use crate::symfun::{check_component, shifted_q, SeriesKind, ShiftVector};

/// Rows `A_1, ..., A_l` and exponents `α` for the neutral construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBkpSpec", into = "RawBkpSpec")]
pub struct BkpSpec {
    a: Vec<LaurentPoly>,
    alpha: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawBkpSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(rename = "A")]
    a: Vec<LaurentPoly>,
    alpha: Vec<i64>,
}

impl TryFrom<RawBkpSpec> for BkpSpec {
    type Error = Error;

    fn try_from(raw: RawBkpSpec) -> Result<Self> {
        if let Some(l) = raw.l {
            if l != raw.a.len() {
                return Err(Error::invalid(format!("l = {l} but {} rows given", raw.a.len())));
            }
        }
        BkpSpec::new(raw.a, raw.alpha)
    }
}

impl From<BkpSpec> for RawBkpSpec {
    fn from(spec: BkpSpec) -> Self {
        RawBkpSpec {
            l: Some(spec.a.len()),
            a: spec.a,
            alpha: spec.alpha,
        }
    }
}

impl BkpSpec {
    pub fn new(a: Vec<LaurentPoly>, alpha: Vec<i64>) -> Result<Self> {
        check_rows(&a, &alpha)?;
        Ok(BkpSpec { a, alpha })
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
        BkpSpec::new(self.a.clone(), alpha)
    }

    fn padded(&self, leading: bool) -> (Vec<LaurentPoly>, Vec<i64>) {
        let mut a = self.a.clone();
        let mut alpha = self.alpha.clone();
        if a.len() % 2 == 1 {
            if leading {
                a.insert(0, LaurentPoly::one());
                alpha.insert(0, 0);
            } else {
                a.push(LaurentPoly::one());
                alpha.push(0);
            }
        }
        (a, alpha)
    }
}

/// Coefficient of `u_i^a u_j^b` in `f(u_i, u_j) A_i Q(u_i) A_j Q(u_j)`:
/// `Σ_{k≥0} (2 - δ_{k0}) (-1)^k T^{(i)}_{a+k} T^{(j)}_{b-k}`.
pub fn bkp_pair_coeff(ai: &LaurentPoly, aj: &LaurentPoly, a: i64, b: i64) -> Poly {
    let mut acc = Poly::zero(1);
    let Some(lo) = aj.min_power() else {
        return acc;
    };
    let two = Rational::from_integer(BigInt::from(2));
    for k in 0..=(b - lo) {
        let c = match (k, k % 2) {
            (0, _) => Rational::one(),
            (_, 0) => two.clone(),
            _ => -two.clone(),
        };
        let x = series_coeff(SeriesKind::Q, ai, 1, 1, a + k);
        if x.is_zero() {
            continue;
        }
        let y = series_coeff(SeriesKind::Q, aj, 1, 1, b - k);
        acc.add_product(&x, &y, &c);
    }
    acc
}

fn pair_pfaffian(a: &[LaurentPoly], alpha: &[i64]) -> Result<Poly> {
    let n = a.len();
    let mut rows = vec![vec![Poly::zero(1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = bkp_pair_coeff(&a[i], &a[j], alpha[i], alpha[j]);
            rows[j][i] = -&v;
            rows[i][j] = v;
        }
    }
    PolyMatrix::from_rows(1, rows)?.pfaffian()
}

/// `T_α = Pf[T̃^{(i,j)}_{α_i,α_j}]`. Odd `l` is completed by a trailing row
/// with `A = 1` and exponent 0, which leaves every coefficient unchanged in
/// the pinned region.
pub fn bkp_coeff_pf(spec: &BkpSpec) -> Result<Poly> {
    let (a, alpha) = spec.padded(false);
    pair_pfaffian(&a, &alpha)
}

/// The same completion placed in front of the rows. The extra row is then
/// applied last, so for odd `l` this is `φ_0` of the odd coefficient: it
/// equals `-bkp_coeff_pf` when no row has a `φ_0` term. For even `l` the two
/// agree.
pub fn bkp_coeff_pf_leading_pad(spec: &BkpSpec) -> Result<Poly> {
    let (a, alpha) = spec.padded(true);
    pair_pfaffian(&a, &alpha)
}

/// `X_1 ... X_l (1)` with `X_j = Σ_k [u^{α_j+k}]A_j φ_k`, `X_l` applied first.
pub fn bkp_coeff_oracle(spec: &BkpSpec) -> Result<Poly> {
    let mut v = Poly::one(1);
    for (a, &alpha) in spec.a.iter().zip(&spec.alpha).rev() {
        let terms: Vec<(i64, Rational)> = a.iter().map(|(k, c)| (k - alpha, c.clone())).collect();
        v = apply_phi_sum(&terms, &v)?;
        if v.is_zero() {
            break;
        }
    }
    Ok(v)
}

/// `χ_{a,b}(x, y) = ½ S_a(x) S_b(y) + Σ_{k≥1} (-1)^k S_{a+k}(x) S_{b-k}(y)`
/// with `x = t~ + c_x`, `y = t~ + c_y`.
pub fn chi(a: i64, b: i64, cx: &ShiftVector, cy: &ShiftVector, s: usize, comp: usize) -> Result<Poly> {
    check_component(s, comp)?;
    let mut acc = Poly::zero(s);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    acc.add_product(&shifted_q(a, cx, s, comp)?, &shifted_q(b, cy, s, comp)?, &half);
    for k in 1..=b.max(0) {
        let c = if k % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        acc.add_product(&shifted_q(a + k, cx, s, comp)?, &shifted_q(b - k, cy, s, comp)?, &c);
    }
    Ok(acc)
}

/// `T_α` for `A_i(u) = b_i exp(Σ c_{i,n} u^n)`:
/// `2^{l/2} (Π b_i) Pf[χ_{α_i,α_j}(t~ + c_i, t~ + c_j)]` for even `l`.
pub fn bkp_closed_form_chi(b: &[Rational], c: &[ShiftVector], alpha: &[i64]) -> Result<Poly> {
    let n = alpha.len();
    if n == 0 || b.len() != n || c.len() != n {
        return Err(Error::invalid(format!(
            "closed form needs equal nonzero lengths, got b={} c={} alpha={n}",
            b.len(),
            c.len()
        )));
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if b.iter().any(Zero::is_zero) {
        return Err(Error::invalid("closed form requires nonzero b"));
    }
    let mut rows = vec![vec![Poly::zero(1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = chi(alpha[i], alpha[j], &c[i], &c[j], 1, 1)?;
            rows[j][i] = -&v;
            rows[i][j] = v;
        }
    }
    let pf = PolyMatrix::from_rows(1, rows)?.pfaffian()?;
    let mut scalar = Rational::from_integer(BigInt::one() << (n / 2));
    for bi in b {
        scalar *= bi;
    }
    Ok(pf.scale(&scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::StrictPartition;
    use crate::symfun::{q_pair, q_schur};

    fn ones(alpha: Vec<i64>) -> BkpSpec {
        BkpSpec::new(vec![LaurentPoly::one(); alpha.len()], alpha).unwrap()
    }

    fn q(k: u32) -> Poly {
        shifted_q(k as i64, &ShiftVector::zero(), 1, 1).unwrap()
    }

    #[test]
    fn pair_examples() {
        let one = LaurentPoly::one();
        assert_eq!(bkp_pair_coeff(&one, &one, 2, 1), q_pair(2, 1, 1, 1).unwrap());
        assert_eq!(bkp_pair_coeff(&one, &one, 1, 0), q(1));
        assert!(bkp_pair_coeff(&one, &one, 1, 1).is_zero());
    }

    #[test]
    fn pfaffian_examples() {
        assert_eq!(bkp_coeff_pf(&ones(vec![2, 1])).unwrap(), q_pair(2, 1, 1, 1).unwrap());
        for k in 0..5 {
            assert_eq!(bkp_coeff_pf(&ones(vec![k as i64])).unwrap(), q(k));
        }
        for parts in [vec![3, 1], vec![4, 2], vec![3, 2, 1], vec![4, 3, 2, 1]] {
            let alpha: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
            let qs = q_schur(&StrictPartition::new(parts).unwrap(), None, 1, 1).unwrap();
            assert_eq!(bkp_coeff_pf(&ones(alpha)).unwrap(), qs);
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(bkp_coeff_oracle(&ones(vec![1])).unwrap(), Poly::var(1, 1, 1).scale(&int(2)));
        assert_eq!(bkp_coeff_oracle(&ones(vec![2, 1])).unwrap(), q_pair(2, 1, 1, 1).unwrap());
        let u = LaurentPoly::monomial(1, int(1));
        let spec = BkpSpec::new(vec![u.clone(), u], vec![0, 0]).unwrap();
        assert_eq!(bkp_coeff_oracle(&spec).unwrap(), bkp_coeff_pf(&spec).unwrap());
        let spec = ones(vec![3, 1, 2]);
        assert_eq!(bkp_coeff_oracle(&spec).unwrap(), bkp_coeff_pf(&spec).unwrap());
    }

    #[test]
    fn padding_position_flips_sign_for_odd_rows() {
        let spec = ones(vec![3, 1, 2]);
        assert_eq!(
            bkp_coeff_pf_leading_pad(&spec).unwrap(),
            -bkp_coeff_pf(&spec).unwrap()
        );
        let even = ones(vec![3, 1]);
        assert_eq!(bkp_coeff_pf_leading_pad(&even).unwrap(), bkp_coeff_pf(&even).unwrap());
    }

    #[test]
    fn chi_examples() {
        let z = ShiftVector::zero();
        let one = int(1);
        let v = bkp_closed_form_chi(&[one.clone(), one.clone()], &[z.clone(), z.clone()], &[2, 1]).unwrap();
        assert_eq!(v, q_pair(2, 1, 1, 1).unwrap());
        // The constant pair is the one exception: the pair sum of (0, 0) is ½.
        assert_eq!(chi(0, 0, &z, &z, 1, 1).unwrap(), Poly::constant(1, crate::algebra::rational::rat(1, 2)));
        for a in 0..6 {
            for b in (0..6).filter(|&b| a + b > 0) {
                let ab = chi(a, b, &z, &z, 1, 1).unwrap();
                let ba = chi(b, a, &z, &z, 1, 1).unwrap();
                assert_eq!(ab, -ba, "{a} {b}");
            }
        }
        assert!(bkp_closed_form_chi(&[one.clone(), one], &[z.clone(), z], &[2, 2])
            .unwrap()
            .is_zero());
    }
}
