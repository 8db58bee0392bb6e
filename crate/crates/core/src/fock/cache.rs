//! Memoized charged-mode actions for workloads that apply many modes to many
//! basis vectors. The polynomial part of `ψ^{±(a)}[n]` on `z^m f` depends on
//! `(n, m)` only through the level `-n - m_a` (or `m_a - n`), so results are
//! stored per `(sign, component, level, monomial)`.

use std::collections::HashMap;

use num_traits::One;

use super::modes::{psi_part, psi_shifts};
use super::{ChargeVector, FockVector, ModeIndex, Sign};
use crate::algebra::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

type Key = (Sign, usize, i64, Monomial);

/// Single-threaded memo table for `ψ` mode actions.
#[derive(Debug, Default)]
pub struct ModeCache {
    s: usize,
    parts: HashMap<Key, Poly>,
    shifts: HashMap<(Sign, usize, Monomial), Vec<Poly>>,
}

impl ModeCache {
    pub fn new(s: usize) -> Self {
        ModeCache {
            s,
            parts: HashMap::new(),
            shifts: HashMap::new(),
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Level of the polynomial part for mode `n` acting on charge `m`.
    pub fn level(sign: Sign, a: usize, n: ModeIndex, m: &ChargeVector) -> i64 {
        match sign {
            Sign::Plus => -n.0 - m.get(a),
            Sign::Minus => m.get(a) - n.0,
        }
    }

    fn monomial_part(&mut self, sign: Sign, a: usize, level: i64, mono: &Monomial) -> &Poly {
        let key = (sign, a, level, mono.clone());
        if !self.parts.contains_key(&key) {
            let skey = (sign, a, mono.clone());
            let s = self.s;
            let shifts = self.shifts.entry(skey).or_insert_with(|| {
                let f = Poly::monomial(s, mono.clone(), Rational::one());
                psi_shifts(sign, a, &f)
            });
            let part = psi_part(sign, s, a, level, shifts);
            self.parts.insert(key.clone(), part);
        }
        &self.parts[&key]
    }

    /// Polynomial part at a given level, extended linearly over `f`.
    pub fn part(&mut self, sign: Sign, a: usize, level: i64, f: &Poly) -> Result<Poly> {
        self.check(a, f.s())?;
        let mut out = Poly::zero(self.s);
        for (mono, c) in f.iter() {
            let g = self.monomial_part(sign, a, level, mono);
            out.add_scaled(g, c);
        }
        Ok(out)
    }

    /// `ψ^{±(a)}[n] v`, identical to [`super::psi_mode`].
    pub fn psi(&mut self, sign: Sign, a: usize, n: ModeIndex, v: &FockVector) -> Result<FockVector> {
        self.check(a, v.s())?;
        let mut out = FockVector::zero(self.s);
        for (m, f) in v.sectors() {
            let level = Self::level(sign, a, n, m);
            let g = self.part(sign, a, level, f)?;
            let delta = if sign == Sign::Plus { 1 } else { -1 };
            let c = if m.prefix_sum(a).rem_euclid(2) == 1 {
                -Rational::one()
            } else {
                Rational::one()
            };
            out.add_sector_scaled(m.with_delta(a, delta), &g, &c);
        }
        Ok(out)
    }

    fn check(&self, a: usize, s: usize) -> Result<()> {
        if s != self.s {
            return Err(Error::ComponentMismatch {
                left: self.s,
                right: s,
            });
        }
        if a == 0 || a > self.s {
            return Err(Error::ComponentOutOfRange { component: a, s: self.s });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::psi_mode;

    #[test]
    fn cache_matches_direct_application() {
        let f = Poly::var(2, 1, 1) * Poly::var(2, 2, 2) + Poly::var(2, 1, 3);
        let v = FockVector::sector(ChargeVector(vec![1, -1]), f).unwrap();
        let mut cache = ModeCache::new(2);
        for sign in [Sign::Plus, Sign::Minus] {
            for a in 1..=2 {
                for n in -3..=4 {
                    let direct = psi_mode(sign, a, ModeIndex(n), &v).unwrap();
                    let cached = cache.psi(sign, a, ModeIndex(n), &v).unwrap();
                    assert_eq!(direct, cached, "{sign:?} {a} {n}");
                }
            }
        }
        assert!(!cache.is_empty());
    }
}
