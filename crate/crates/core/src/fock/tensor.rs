//! Elements of `B^{⊗s} ⊗ B^{⊗s}` and factor-wise operator application.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::modes::{phi_mode, psi_mode};
use super::{ChargeVector, FockVector, ModeIndex, Sign};
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

/// One tensor factor of an operator product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeSpec {
    Identity,
    Psi {
        sign: Sign,
        component: usize,
        mode: ModeIndex,
    },
}

/// Sectors keyed by (left charge, right charge); each polynomial lives in
/// `2s` components, the left factor using `1..=s` and the right `s+1..=2s`.
///
/// Neutral-fermion tensors use empty charge vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorFockVector {
    s: usize,
    sectors: BTreeMap<(ChargeVector, ChargeVector), Poly>,
}

impl TensorFockVector {
    pub fn zero(s: usize) -> Self {
        TensorFockVector {
            s,
            sectors: BTreeMap::new(),
        }
    }

    /// Components per factor.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn sectors(&self) -> impl Iterator<Item = (&(ChargeVector, ChargeVector), &Poly)> {
        self.sectors.iter()
    }

    pub fn num_sectors(&self) -> usize {
        self.sectors.len()
    }

    /// Total number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.sectors.values().map(Poly::len).sum()
    }

    pub fn get(&self, left: &ChargeVector, right: &ChargeVector) -> Option<&Poly> {
        self.sectors.get(&(left.clone(), right.clone()))
    }

    /// Adds a sector polynomial already expressed in `2s` components.
    pub fn add_sector(&mut self, left: ChargeVector, right: ChargeVector, f: &Poly) -> Result<()> {
        if f.s() != 2 * self.s {
            return Err(Error::ComponentMismatch {
                left: 2 * self.s,
                right: f.s(),
            });
        }
        self.add_sector_unchecked(left, right, f, &Rational::one());
        Ok(())
    }

    fn add_sector_unchecked(&mut self, left: ChargeVector, right: ChargeVector, f: &Poly, c: &Rational) {
        if f.is_zero() || c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self
            .sectors
            .entry(key.clone())
            .or_insert_with(|| Poly::zero(2 * self.s));
        slot.add_scaled(f, c);
        if slot.is_zero() {
            self.sectors.remove(&key);
        }
    }

    /// `self += c (z^{m} f) ⊗ (z^{m'} g)` with `f`, `g` in `s` components.
    pub fn add_poly_product(
        &mut self,
        left: &ChargeVector,
        f: &Poly,
        right: &ChargeVector,
        g: &Poly,
        c: &Rational,
    ) {
        if f.is_zero() || g.is_zero() || c.is_zero() {
            return;
        }
        let s2 = 2 * self.s;
        let lifted = f.lift(s2).expect("left factor within s components");
        let shifted = g.shift_components(self.s, s2);
        let key = (left.clone(), right.clone());
        let slot = self.sectors.entry(key.clone()).or_insert_with(|| Poly::zero(s2));
        slot.add_product(&lifted, &shifted, c);
        if slot.is_zero() {
            self.sectors.remove(&key);
        }
    }

    /// `self += c · v ⊗ w`.
    pub fn add_product(&mut self, v: &FockVector, w: &FockVector, c: &Rational) -> Result<()> {
        if v.s() != self.s || w.s() != self.s {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: if v.s() != self.s { v.s() } else { w.s() },
            });
        }
        for (m, f) in v.sectors() {
            for (mm, g) in w.sectors() {
                self.add_poly_product(m, f, mm, g, c);
            }
        }
        Ok(())
    }

    /// Sum of two tensors; exact, so the merge order is irrelevant.
    pub fn merge(mut self, other: TensorFockVector) -> TensorFockVector {
        assert_eq!(self.s, other.s, "component count mismatch");
        for ((l, r), f) in other.sectors {
            self.add_sector_unchecked(l, r, &f, &Rational::one());
        }
        self
    }

    pub fn scale(&self, c: &Rational) -> TensorFockVector {
        let mut out = TensorFockVector::zero(self.s);
        for ((l, r), f) in &self.sectors {
            out.add_sector_unchecked(l.clone(), r.clone(), f, c);
        }
        out
    }
}

fn apply_spec(op: ModeSpec, v: &FockVector) -> Result<FockVector> {
    match op {
        ModeSpec::Identity => Ok(v.clone()),
        ModeSpec::Psi {
            sign,
            component,
            mode,
        } => psi_mode(sign, component, mode, v),
    }
}

/// `(opL v) ⊗ (opR w)`.
pub fn tensor_apply(
    op_l: ModeSpec,
    op_r: ModeSpec,
    v: &FockVector,
    w: &FockVector,
) -> Result<TensorFockVector> {
    if v.s() != w.s() {
        return Err(Error::ComponentMismatch {
            left: v.s(),
            right: w.s(),
        });
    }
    let left = apply_spec(op_l, v)?;
    let right = apply_spec(op_r, w)?;
    let mut out = TensorFockVector::zero(v.s());
    out.add_product(&left, &right, &Rational::one())?;
    Ok(out)
}

/// `(φ_a f) ⊗ (φ_b g)` on `B_odd ⊗ B_odd`; `None` stands for the identity.
pub fn tensor_apply_neutral(
    op_l: Option<i64>,
    op_r: Option<i64>,
    f: &Poly,
    g: &Poly,
) -> Result<TensorFockVector> {
    let left = match op_l {
        Some(n) => phi_mode(n, f)?,
        None => f.clone(),
    };
    let right = match op_r {
        Some(n) => phi_mode(n, g)?,
        None => g.clone(),
    };
    let mut out = TensorFockVector::zero(1);
    let empty = ChargeVector::default();
    out.add_poly_product(&empty, &left, &empty, &right, &Rational::one());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pair() {
        let v = FockVector::sector(ChargeVector(vec![0]), Poly::var(1, 1, 2)).unwrap();
        let t = tensor_apply(ModeSpec::Identity, ModeSpec::Identity, &v, &v).unwrap();
        let f = &Poly::var(2, 1, 2) * &Poly::var(2, 2, 2);
        assert_eq!(t.get(&ChargeVector(vec![0]), &ChargeVector(vec![0])), Some(&f));
    }

    #[test]
    fn charged_pair_on_vacuum() {
        let vac = FockVector::vacuum(1);
        let plus = ModeSpec::Psi {
            sign: Sign::Plus,
            component: 1,
            mode: ModeIndex::from_half(-1),
        };
        let minus = ModeSpec::Psi {
            sign: Sign::Minus,
            component: 1,
            mode: ModeIndex::from_half(-1),
        };
        let t = tensor_apply(plus, minus, &vac, &vac).unwrap();
        assert_eq!(t.num_sectors(), 1);
        assert_eq!(
            t.get(&ChargeVector(vec![1]), &ChargeVector(vec![-1])),
            Some(&Poly::one(2))
        );
        let bad = ModeSpec::Psi {
            sign: Sign::Plus,
            component: 2,
            mode: ModeIndex(0),
        };
        assert!(tensor_apply(bad, ModeSpec::Identity, &vac, &vac).is_err());
    }

    #[test]
    fn neutral_pair_on_vacuum() {
        let one = Poly::one(1);
        let t = tensor_apply_neutral(Some(0), Some(0), &one, &one).unwrap();
        let e = ChargeVector::default();
        assert_eq!(t.get(&e, &e), Some(&Poly::one(2)));
    }
}
