//! Sparse multivariate polynomials over the rationals.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::rational::{binomial, Rational};
use crate::error::{Error, Result};

/// A polynomial in the variables `p^(a)_n`, `1 <= a <= s`.
///
/// Terms are kept in a `BTreeMap` keyed by the graded-lex monomial order and
/// never hold a zero coefficient, so structural equality is mathematical
/// equality (for a fixed component count `s`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    s: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(s: usize) -> Poly {
        Poly {
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(s: usize) -> Poly {
        Poly::constant(s, Rational::one())
    }

    pub fn constant(s: usize, c: Rational) -> Poly {
        Poly::monomial(s, Monomial::one(), c)
    }

    pub fn monomial(s: usize, m: Monomial, c: Rational) -> Poly {
        assert!(m.max_component() <= s, "monomial uses a component beyond s");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { s, terms }
    }

    /// The variable `p^(a)_n`.
    ///
    /// Panics if `a` is not in `1..=s` or `n == 0`; see [`Poly::try_var`].
    pub fn var(s: usize, a: usize, n: u32) -> Poly {
        Poly::try_var(s, a, n).expect("invalid variable")
    }

    pub fn try_var(s: usize, a: usize, n: u32) -> Result<Poly> {
        if a == 0 || a > s {
            return Err(Error::ComponentOutOfRange { component: a, s });
        }
        if n == 0 || n > Var::MAX_INDEX {
            return Err(Error::invalid(format!("variable index {n} out of range")));
        }
        Ok(Poly::monomial(s, Monomial::var(Var::new(a, n)), Rational::one()))
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(s: usize, terms: I) -> Poly {
        let mut p = Poly::zero(s);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn from_map(s: usize, map: HashMap<Monomial, Rational>) -> Poly {
        Poly {
            s,
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending) display order.
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Highest component index that actually occurs.
    pub fn max_component(&self) -> usize {
        self.terms.keys().map(Monomial::max_component).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_component() <= self.s);
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_s(&self, other: &Poly) -> Result<()> {
        if self.s != other.s {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: other.s,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_s(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, None);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_s(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, Some(&-Rational::one()));
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_s(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_assign_unchecked(&mut self, other: &Poly, factor: Option<&Rational>) {
        for (m, c) in &other.terms {
            let c = match factor {
                Some(f) => c * f,
                None => c.clone(),
            };
            self.add_term(m.clone(), c);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        assert_eq!(self.s, other.s, "component count mismatch");
        if c.is_zero() {
            return;
        }
        self.add_assign_unchecked(other, Some(c));
    }

    /// `self += c * a * b` without materializing the product first.
    pub fn add_product(&mut self, a: &Poly, b: &Poly, c: &Rational) {
        assert!(a.s == self.s && b.s == self.s, "component count mismatch");
        if c.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            let cac = ca * c;
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &cac * cb);
            }
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.s);
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (single, many) = if self.terms.len() == 1 {
                (self, other)
            } else {
                (other, self)
            };
            let (m, c) = single.terms.iter().next().unwrap();
            // Multiplying by a monomial is order preserving.
            return Poly {
                s: self.s,
                terms: many.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
            };
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        Poly::from_map(self.s, acc)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.s);
        }
        Poly {
            s: self.s,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.s);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Exact partial derivative with respect to `p^(a)_n`.
    pub fn partial(&self, a: usize, n: u32) -> Poly {
        if a == 0 || n == 0 || a > self.s || n > Var::MAX_INDEX {
            return Poly::zero(self.s);
        }
        let v = Var::new(a, n);
        let mut out = Poly::zero(self.s);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Maximal weighted degree over all terms, restricted to one component if
    /// given. `None` stands for the degree of the zero polynomial.
    pub fn weighted_degree(&self, component: Option<usize>) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match component {
                Some(a) => m.component_degree(a),
                None => m.degree(),
            })
            .max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// True when every term has total weighted degree `d` (vacuous for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.keys().next() {
            Some(m) => self.is_homogeneous_of(m.degree()),
            None => true,
        }
    }

    /// Fails on the first even-index variable.
    pub fn check_odd(&self) -> Result<()> {
        for m in self.terms.keys() {
            if let Some(&(v, _)) = m.factors().iter().find(|(v, _)| v.index() % 2 == 0) {
                return Err(Error::EvenVariable { index: v.index() });
            }
        }
        Ok(())
    }

    /// The same polynomial viewed in a space with `s_new` components.
    pub fn lift(&self, s_new: usize) -> Result<Poly> {
        if self.max_component() > s_new {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: s_new,
            });
        }
        Ok(Poly {
            s: s_new,
            terms: self.terms.clone(),
        })
    }

    /// Moves every variable of component `a` to component `a + offset` in a
    /// space with `s_new` components.
    pub fn shift_components(&self, offset: usize, s_new: usize) -> Poly {
        assert!(self.max_component() + offset <= s_new);
        Poly {
            s: s_new,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.map_vars(|v| v.shifted(offset)), c.clone()))
                .collect(),
        }
    }

    /// Applies an arbitrary variable relabelling.
    pub fn map_vars(&self, s_new: usize, f: impl Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero(s_new);
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f), c.clone());
        }
        out
    }

    /// `self ⊗ other` in a space with `self.s + other.s` components, the
    /// right factor occupying the upper block.
    pub fn tensor(&self, other: &Poly) -> Poly {
        let s = self.s + other.s;
        let right = other.shift_components(self.s, s);
        let mut out = Poly::zero(s);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &right.terms {
                // Disjoint variables: no collisions, so insert directly.
                out.terms.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_s(divisor)?;
        let (lm, lc) = divisor
            .leading()
            .ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.s);
        while let Some((m, c)) = rem.leading() {
            let qm = m
                .div(&lm)
                .ok_or_else(|| Error::invalid("polynomial division is not exact"))?;
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Coefficients of `w^k`, `k = 0, 1, ...`, in
    /// `f(..., p^(a)_n + c_n w^n, ...)` where `c_n` is given by `weight(n)`.
    ///
    /// This is the bosonic form of a vertex-type exponential of derivations:
    /// `exp(Σ c_n w^n ∂/∂p_n) f`.
    pub fn shift_coefficients(
        &self,
        a: usize,
        weight: impl Fn(u32) -> Option<Rational>,
    ) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        let bump = |k: usize, m: Monomial, c: Rational, out: &mut Vec<Poly>| {
            while out.len() <= k {
                out.push(Poly::zero(self.s));
            }
            out[k].add_term(m, c);
        };
        for (mono, coeff) in &self.terms {
            // Partial expansions: (w-degree, monomial, coefficient).
            let mut partial: Vec<(usize, Monomial, Rational)> =
                vec![(0, Monomial::one(), coeff.clone())];
            for &(v, e) in mono.factors() {
                let c_n = if v.component() == a {
                    weight(v.index()).filter(|c| !c.is_zero())
                } else {
                    None
                };
                match c_n {
                    None => {
                        let f = Monomial::var_pow(v, e);
                        for entry in &mut partial {
                            entry.1 = entry.1.mul(&f);
                        }
                    }
                    Some(c_n) => {
                        let n = v.index() as usize;
                        let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                        let mut cpow = Rational::one();
                        for j in 0..=e {
                            let factor = Rational::from_integer(binomial(e, j)) * &cpow;
                            let f = Monomial::var_pow(v, e - j);
                            for (k, m, c) in &partial {
                                next.push((k + n * j as usize, m.mul(&f), c * &factor));
                            }
                            cpow *= &c_n;
                        }
                        partial = next;
                    }
                }
            }
            for (k, m, c) in partial {
                bump(k, m, c, &mut out);
            }
        }
        if out.is_empty() {
            out.push(Poly::zero(self.s));
        }
        out
    }

    /// Evaluation of all variables at rationals given by `value`.
    pub fn evaluate(&self, value: impl Fn(Var) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let x = value(v);
                for _ in 0..e {
                    t *= &x;
                }
            }
            total += t;
        }
        total
    }

    /// Largest absolute coefficient numerator, a cheap size diagnostic.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                self.$imp(rhs).expect("component count mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$imp(&rhs).expect("component count mismatch")
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$imp(rhs).expect("component count mismatch")
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$imp(&rhs).expect("component count mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.s, rhs.s, "component count mismatch");
        self.add_assign_unchecked(rhs, None);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.s, rhs.s, "component count mismatch");
        self.add_assign_unchecked(rhs, Some(&-Rational::one()));
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Rational> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Rational) -> Poly {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn p(n: u32) -> Poly {
        Poly::var(1, 1, n)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(1) * &p(1), p(1).pow(2));
        assert!((&p(1) - &p(1)).is_zero());
        let f = &p(1).pow(2).scale(&rat(1, 2)) + &p(2).scale(&rat(1, 2));
        assert_eq!(&f * &Poly::one(1), f);
    }

    #[test]
    fn mismatched_components() {
        let a = Poly::var(1, 1, 1);
        let b = Poly::var(2, 2, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ComponentMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
        assert!(Poly::try_var(2, 3, 1).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!(p(1).pow(2).partial(1, 1), p(1).scale(&int(2)));
        assert!(p(1).pow(2).partial(1, 2).is_zero());
        let f = (&p(1) * &p(3)).scale(&rat(1, 3));
        assert_eq!(f.partial(1, 3), p(1).scale(&rat(1, 3)));
    }

    #[test]
    fn degrees() {
        assert_eq!(p(1).pow(2).weighted_degree(None), Some(2));
        assert_eq!((&p(3) + &(&p(1) * &p(2))).weighted_degree(None), Some(3));
        assert_eq!(Poly::zero(1).weighted_degree(None), None);
        let mixed = &Poly::var(2, 1, 2) * &Poly::var(2, 2, 3);
        assert_eq!(mixed.weighted_degree(Some(1)), Some(2));
        assert_eq!(mixed.weighted_degree(Some(2)), Some(3));
    }

    #[test]
    fn exact_division() {
        let a = &p(1) + &p(2);
        let b = &(&p(1) * &p(1)) - &p(3).scale(&rat(2, 3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(b.div_exact(&a).is_err());
    }

    #[test]
    fn taylor_shift() {
        // f = p1^2 p2, shift p_n -> p_n + w^n.
        let f = &p(1).pow(2) * &p(2);
        let c = f.shift_coefficients(1, |_| Some(int(1)));
        // Full expansion: (p1 + w)^2 (p2 + w^2).
        let expect = [
            f.clone(),
            (&p(1) * &p(2)).scale(&int(2)),
            &p(2) + &p(1).pow(2),
            p(1).scale(&int(2)),
            Poly::one(1),
        ];
        assert_eq!(c.len(), expect.len());
        for (got, want) in c.iter().zip(expect.iter()) {
            assert_eq!(got, want);
        }
    }

    #[test]
    fn tensor_blocks() {
        let left = &p(1) + &Poly::one(1);
        let right = p(2);
        let t = left.tensor(&right);
        assert_eq!(t.s(), 2);
        let expect = &(&Poly::var(2, 1, 1) * &Poly::var(2, 2, 2)) + &Poly::var(2, 2, 2);
        assert_eq!(t, expect);
    }

    #[test]
    fn descending_iteration() {
        let f = &(&p(1).pow(2) + &p(2)) + &Poly::one(1);
        let order: Vec<u32> = f.iter_desc().map(|(m, _)| m.degree()).collect();
        assert_eq!(order, vec![2, 2, 0]);
        assert_eq!(f.iter_desc().next().unwrap().0, &Monomial::var_pow(Var::new(1, 1), 2));
    }
}
