//! Bosonic mode actions of `ψ^{±(a)}[n]` and `φ_n`.
//!
//! With `H(u) E^⊥(-u) f = Σ_{r,k} h_r [w^k] f(p - w^•) u^{r-k}` the mode
//! `ψ^{+(a)}[n]` on `z^m f` is
//! `(-1)^{m_1+...+m_{a-1}} z^{m+e_a} Σ_{r-k=-n-m_a} h_r [w^k] f(p - w^•)`,
//! and `ψ^{-(a)}[n]` is the mirror image with `(-1)^r e_r`, the shift
//! `p + w^•` and `r - k = m_a - n`. The shift coefficients do not depend on
//! `n`, so plans compute them once and reuse them for every mode.

use num_traits::{One, Zero};

use super::{ChargeVector, FockVector, ModeIndex, Sign};
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::symfun::{cached_series, SeriesKind};

/// Precomputed data for applying `ψ^{±(a)}` modes to a fixed vector.
#[derive(Clone, Debug)]
pub struct PsiPlan {
    sign: Sign,
    a: usize,
    s: usize,
    sectors: Vec<(ChargeVector, Vec<Poly>)>,
}

impl PsiPlan {
    pub fn new(sign: Sign, a: usize, v: &FockVector) -> Result<Self> {
        if a == 0 || a > v.s() {
            return Err(Error::ComponentOutOfRange {
                component: a,
                s: v.s(),
            });
        }
        let sectors = v
            .sectors()
            .map(|(m, f)| (m.clone(), psi_shifts(sign, a, f)))
            .collect();
        Ok(PsiPlan {
            sign,
            a,
            s: v.s(),
            sectors,
        })
    }

    /// `ψ^{±(a)}[n] v`.
    pub fn apply(&self, n: ModeIndex) -> FockVector {
        let mut out = FockVector::zero(self.s);
        for (m, shifts) in &self.sectors {
            let (target, offset) = self.sector_result(m, shifts, n);
            if let Some(g) = offset {
                let prefix = m.prefix_sum(self.a);
                let c = if prefix.rem_euclid(2) == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                out.add_sector_scaled(target, &g, &c);
            }
        }
        out
    }

    fn sector_result(
        &self,
        m: &ChargeVector,
        shifts: &[Poly],
        n: ModeIndex,
    ) -> (ChargeVector, Option<Poly>) {
        let ma = m.get(self.a);
        let (target, base) = match self.sign {
            Sign::Plus => (m.with_delta(self.a, 1), -n.0 - ma),
            Sign::Minus => (m.with_delta(self.a, -1), ma - n.0),
        };
        let acc = psi_part(self.sign, self.s, self.a, base, shifts);
        (target, if acc.is_zero() { None } else { Some(acc) })
    }
}

/// Shift coefficients used by `ψ^{±(a)}`: `[w^k] f(p ∓ w^•)`.
pub(crate) fn psi_shifts(sign: Sign, a: usize, f: &Poly) -> Vec<Poly> {
    let step = match sign {
        Sign::Plus => -Rational::one(),
        Sign::Minus => Rational::one(),
    };
    f.shift_coefficients(a, |_| Some(step.clone()))
}

/// Polynomial part `Σ_k c_{base+k} shifts[k]` of a charged mode, where `c_r`
/// is `h_r` for `ψ^+` and `(-1)^r e_r` for `ψ^-`. The level `base` is
/// `-n - m_a` for `ψ^+[n]` and `m_a - n` for `ψ^-[n]`.
pub(crate) fn psi_part(sign: Sign, s: usize, a: usize, base: i64, shifts: &[Poly]) -> Poly {
    let mut acc = Poly::zero(s);
    let top = base + shifts.len() as i64 - 1;
    if top < 0 {
        return acc;
    }
    let kind = match sign {
        Sign::Plus => SeriesKind::H,
        Sign::Minus => SeriesKind::E,
    };
    let table = cached_series(kind, s, a, top as usize);
    for (k, sk) in shifts.iter().enumerate() {
        let r = base + k as i64;
        if r < 0 || sk.is_zero() {
            continue;
        }
        let c = if sign == Sign::Minus && r % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        acc.add_product(&table[r as usize], sk, &c);
    }
    acc
}

/// `ψ^{±(a)}_i v` for the mode `i = n - 1/2`.
pub fn psi_mode(sign: Sign, a: usize, n: ModeIndex, v: &FockVector) -> Result<FockVector> {
    Ok(PsiPlan::new(sign, a, v)?.apply(n))
}

/// `Σ c_n ψ^{±(a)}[n] v` for a finite list of modes.
pub fn apply_psi_sum(
    sign: Sign,
    a: usize,
    terms: &[(ModeIndex, Rational)],
    v: &FockVector,
) -> Result<FockVector> {
    let plan = PsiPlan::new(sign, a, v)?;
    let mut out = FockVector::zero(v.s());
    for (n, c) in terms {
        if c.is_zero() {
            continue;
        }
        let w = plan.apply(*n);
        for (m, f) in w.sectors() {
            out.add_sector_scaled(m.clone(), f, c);
        }
    }
    Ok(out)
}

/// Precomputed `σ_k(f) = [w^k] f(p_odd - w^•)` for the neutral modes acting
/// on component 1.
#[derive(Clone, Debug)]
pub struct PhiPlan {
    s: usize,
    sigma: Vec<Poly>,
}

impl PhiPlan {
    pub fn new(f: &Poly) -> Result<Self> {
        f.check_odd()?;
        if f.max_component() > 1 {
            return Err(Error::ComponentOutOfRange {
                component: f.max_component(),
                s: 1,
            });
        }
        let sigma = f.shift_coefficients(1, |n| {
            if n % 2 == 1 {
                Some(-Rational::one())
            } else {
                None
            }
        });
        Ok(PhiPlan { s: f.s(), sigma })
    }

    /// `φ_n f = Σ_{r-k=-n} q_r σ_k(f)`.
    pub fn apply(&self, n: i64) -> Poly {
        let top = self.sigma.len() as i64 - 1 - n;
        let mut acc = Poly::zero(self.s);
        if top < 0 {
            return acc;
        }
        let q = cached_series(SeriesKind::Q, self.s, 1, top as usize);
        for (k, sk) in self.sigma.iter().enumerate() {
            let r = k as i64 - n;
            if r >= 0 && !sk.is_zero() {
                acc.add_product(&q[r as usize], sk, &Rational::one());
            }
        }
        acc
    }
}

/// `φ_n f`, the coefficient of `u^{-n}` in `Q(u) S^⊥(-u) f`.
pub fn phi_mode(n: i64, f: &Poly) -> Result<Poly> {
    Ok(PhiPlan::new(f)?.apply(n))
}

/// `Σ c_n φ_n f`.
pub fn apply_phi_sum(terms: &[(i64, Rational)], f: &Poly) -> Result<Poly> {
    let plan = PhiPlan::new(f)?;
    let mut out = Poly::zero(f.s());
    for (n, c) in terms {
        out.add_scaled(&plan.apply(*n), c);
    }
    Ok(out)
}

/// Largest modes that can act nontrivially: `ψ^{+(a)}[n] v = 0` for
/// `n > plus_hi` and `ψ^{-(a)}[n] v = 0` for `n > minus_hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportBounds {
    pub plus_hi: i64,
    pub minus_hi: i64,
}

/// Envelope over sectors of `D_a - m_a` and `D_a + m_a`, where `D_a` is the
/// component-`a` weighted degree. `None` for the zero vector.
pub fn mode_support_bounds(v: &FockVector, a: usize) -> Result<Option<SupportBounds>> {
    if a == 0 || a > v.s() {
        return Err(Error::ComponentOutOfRange {
            component: a,
            s: v.s(),
        });
    }
    let mut out: Option<SupportBounds> = None;
    for (m, f) in v.sectors() {
        let d = f.weighted_degree(Some(a)).unwrap_or(0) as i64;
        let ma = m.get(a);
        let b = SupportBounds {
            plus_hi: d - ma,
            minus_hi: d + ma,
        };
        out = Some(match out {
            None => b,
            Some(o) => SupportBounds {
                plus_hi: o.plus_hi.max(b.plus_hi),
                minus_hi: o.minus_hi.max(b.minus_hi),
            },
        });
    }
    Ok(out)
}

/// `φ_n f = 0` for `n` above the returned degree; `None` for `f = 0`.
pub fn phi_support_bound(f: &Poly) -> Option<i64> {
    f.weighted_degree(Some(1)).map(i64::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(n: u32) -> Poly {
        Poly::var(1, 1, n)
    }

    fn z(m: i64, f: Poly) -> FockVector {
        FockVector::sector(ChargeVector(vec![m]), f).unwrap()
    }

    #[test]
    fn psi_on_vacuum() {
        let vac = FockVector::vacuum(1);
        let plus = |half: i64| psi_mode(Sign::Plus, 1, ModeIndex::from_half(half), &vac).unwrap();
        let minus = |half: i64| psi_mode(Sign::Minus, 1, ModeIndex::from_half(half), &vac).unwrap();
        assert_eq!(plus(-1), z(1, Poly::one(1)));
        assert!(plus(1).is_zero());
        assert_eq!(plus(-3), z(1, p(1)));
        assert_eq!(minus(-1), z(-1, Poly::one(1)));
    }

    #[test]
    fn phi_examples() {
        let one = Poly::one(1);
        assert_eq!(phi_mode(0, &one).unwrap(), one);
        for n in 1..5 {
            assert!(phi_mode(n, &one).unwrap().is_zero());
        }
        assert_eq!(phi_mode(-1, &one).unwrap(), p(1).scale(&int(2)));
        assert_eq!(phi_mode(1, &p(1).scale(&int(2))).unwrap(), Poly::constant(1, int(-2)));
        assert!(matches!(
            phi_mode(0, &p(2)),
            Err(Error::EvenVariable { index: 2 })
        ));
    }

    #[test]
    fn support_bounds() {
        let b = mode_support_bounds(&FockVector::vacuum(1), 1).unwrap().unwrap();
        assert_eq!(b, SupportBounds { plus_hi: 0, minus_hi: 0 });
        assert_eq!(phi_support_bound(&p(1).scale(&int(2))), Some(1));
        assert!(mode_support_bounds(&FockVector::vacuum(1), 2).is_err());
    }

    #[test]
    fn psi_two_components_sign() {
        // ψ^{+(2)}_{-1/2} z_1 = -z_1 z_2.
        let v = FockVector::sector(ChargeVector(vec![1, 0]), Poly::one(2)).unwrap();
        let w = psi_mode(Sign::Plus, 2, ModeIndex(0), &v).unwrap();
        let expect = FockVector::sector(ChargeVector(vec![1, 1]), Poly::constant(2, int(-1))).unwrap();
        assert_eq!(w, expect);
    }
}
