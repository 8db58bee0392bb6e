//! Boson Fock spaces and the bosonic action of charged and neutral fermions.
//!
//! A vector of `B^{⊗s}` is a finite sum `Σ_m z^m f_m` over charge vectors
//! `m ∈ Z^s`. The charged fermion modes `ψ^{±(a)}_i`, `i ∈ Z + 1/2`, are
//! stored by the integer `n = i + 1/2`: the operator `ψ^±[n]` is the
//! coefficient of `u^{-n}` in the field `ψ^±(u)`.

mod cache;
mod modes;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

pub use modes::{
    apply_phi_sum, apply_psi_sum, mode_support_bounds, phi_mode, phi_support_bound, psi_mode,
    PhiPlan, PsiPlan, SupportBounds,
};
pub use cache::ModeCache;
pub use tensor::{tensor_apply, tensor_apply_neutral, ModeSpec, TensorFockVector};

/// Exponent vector of `z_1^{m_1} ... z_s^{m_s}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChargeVector(pub Vec<i64>);

impl ChargeVector {
    pub fn zero(s: usize) -> Self {
        ChargeVector(vec![0; s])
    }

    pub fn unit(s: usize, a: usize) -> Self {
        let mut m = vec![0; s];
        m[a - 1] = 1;
        ChargeVector(m)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Entry for the 1-based component `a`.
    pub fn get(&self, a: usize) -> i64 {
        self.0[a - 1]
    }

    pub fn with_delta(&self, a: usize, delta: i64) -> Self {
        let mut m = self.0.clone();
        m[a - 1] += delta;
        ChargeVector(m)
    }

    pub fn add(&self, other: &ChargeVector) -> Self {
        ChargeVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    /// `m_1 + ... + m_{a-1}`, the exponent of the sign picked up by a
    /// component-`a` fermion.
    pub fn prefix_sum(&self, a: usize) -> i64 {
        self.0[..a - 1].iter().sum()
    }
}

impl fmt::Debug for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Half-integer fermion index `i = n - 1/2`, stored as `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex(pub i64);

impl ModeIndex {
    /// The mode with fermion index `num / 2`; `num` must be odd.
    pub fn from_half(num: i64) -> Self {
        assert!(num % 2 != 0, "fermion indices are half-odd integers");
        ModeIndex((num + 1) / 2)
    }

    /// Numerator of the fermion index over 2.
    pub fn half(self) -> i64 {
        2 * self.0 - 1
    }

    /// Index `-i`, that is `n ↦ 1 - n`.
    pub fn dual(self) -> Self {
        ModeIndex(1 - self.0)
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.half())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// Finite sum of charge sectors `z^m f_m` in `B^{⊗s}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockVector {
    s: usize,
    sectors: BTreeMap<ChargeVector, Poly>,
}

impl FockVector {
    pub fn zero(s: usize) -> Self {
        FockVector {
            s,
            sectors: BTreeMap::new(),
        }
    }

    /// The vacuum `1 = z^0`.
    pub fn vacuum(s: usize) -> Self {
        Self::sector(ChargeVector::zero(s), Poly::one(s)).expect("valid vacuum")
    }

    /// A single sector `z^m f`.
    pub fn sector(m: ChargeVector, f: Poly) -> Result<Self> {
        let mut v = Self::zero(f.s());
        v.add_sector(m, f)?;
        Ok(v)
    }

    pub fn from_sectors<I: IntoIterator<Item = (ChargeVector, Poly)>>(s: usize, it: I) -> Result<Self> {
        let mut v = Self::zero(s);
        for (m, f) in it {
            v.add_sector(m, f)?;
        }
        Ok(v)
    }

    /// Adds `z^m f`, merging with an existing sector.
    pub fn add_sector(&mut self, m: ChargeVector, f: Poly) -> Result<()> {
        if m.len() != self.s {
            return Err(Error::invalid(format!(
                "charge vector of length {} in a space with {} components",
                m.len(),
                self.s
            )));
        }
        if f.s() != self.s {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: f.s(),
            });
        }
        if f.is_zero() {
            return Ok(());
        }
        match self.sectors.get_mut(&m) {
            Some(g) => {
                *g += &f;
                if g.is_zero() {
                    self.sectors.remove(&m);
                }
            }
            None => {
                self.sectors.insert(m, f);
            }
        }
        Ok(())
    }

    pub(crate) fn add_sector_scaled(&mut self, m: ChargeVector, f: &Poly, c: &Rational) {
        if c.is_zero() || f.is_zero() {
            return;
        }
        let g = self.sectors.entry(m.clone()).or_insert_with(|| Poly::zero(self.s));
        g.add_scaled(f, c);
        if g.is_zero() {
            self.sectors.remove(&m);
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    /// Sectors in lexicographic charge order.
    pub fn sectors(&self) -> impl Iterator<Item = (&ChargeVector, &Poly)> {
        self.sectors.iter()
    }

    pub fn num_sectors(&self) -> usize {
        self.sectors.len()
    }

    pub fn get(&self, m: &ChargeVector) -> Option<&Poly> {
        self.sectors.get(m)
    }

    /// Common total charge of all sectors; `None` for the zero vector.
    pub fn total_charge(&self) -> Result<Option<i64>> {
        let mut charge = None;
        for m in self.sectors.keys() {
            match charge {
                None => charge = Some(m.total()),
                Some(c) if c != m.total() => {
                    return Err(Error::invalid(format!(
                        "vector is not charge-homogeneous (charges {c} and {})",
                        m.total()
                    )))
                }
                _ => {}
            }
        }
        Ok(charge)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.s);
        for (m, f) in &self.sectors {
            out.add_sector_scaled(m.clone(), f, c);
        }
        out
    }

    pub fn add(&self, other: &FockVector) -> Result<Self> {
        if self.s != other.s {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: other.s,
            });
        }
        let mut out = self.clone();
        for (m, f) in &other.sectors {
            out.add_sector(m.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<Self> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Multiplies by a polynomial in the `p` variables, sector-wise.
    pub fn mul_poly(&self, g: &Poly) -> Result<Self> {
        let mut out = Self::zero(self.s);
        for (m, f) in &self.sectors {
            out.add_sector(m.clone(), f.checked_mul(g)?)?;
        }
        Ok(out)
    }

    /// Replaces each key `m` by `m + shift` and multiplies the sector by
    /// the sign `(-1)^{sign(m)}`.
    pub fn translate(&self, shift: &ChargeVector, sign: impl Fn(&ChargeVector) -> i64) -> Result<Self> {
        if shift.len() != self.s {
            return Err(Error::invalid("translation vector of wrong length"));
        }
        let mut out = Self::zero(self.s);
        for (m, f) in &self.sectors {
            let f = if sign(m).rem_euclid(2) == 1 { -f } else { f.clone() };
            out.add_sector(m.add(shift), f)?;
        }
        Ok(out)
    }

    /// Maximal component-`a` weighted degree over all sectors.
    pub fn component_degree(&self, a: usize) -> Option<u32> {
        self.sectors
            .values()
            .filter_map(|f| f.weighted_degree(Some(a)))
            .max()
    }
}
