//! Finite Laurent polynomials in one formal variable.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};

/// `Σ_k c_k u^k` with finitely many nonzero `c_k`, negative `k` allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c u^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_power(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Multiplication by `u^d`.
    pub fn shift(&self, d: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + d, c.clone())).collect(),
        }
    }
}

/// Wire form `{"coeffs": {"<k>": "<num>/<den>", ...}}`, keys in ascending
/// numeric order.
struct Coeffs<'a>(&'a BTreeMap<i64, Rational>);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, c) in self.0 {
            map.serialize_entry(&k.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLaurent {
    coeffs: BTreeMap<String, String>,
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLaurent::deserialize(de)?;
        let mut out = LaurentPoly::zero();
        for (k, c) in raw.coeffs {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad power key {k:?}")))?;
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            out.add_term(k, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::from_coeffs([(-1, int(2)), (1, int(1))]);
        let b = LaurentPoly::from_coeffs([(1, int(1)), (0, int(-1))]);
        let ab = a.mul(&b);
        assert_eq!(ab.coeff(0), int(2));
        assert_eq!(ab.coeff(-1), int(-2));
        assert_eq!(ab.coeff(2), int(1));
        assert_eq!(ab.coeff(1), int(-1));
        assert_eq!(ab.min_power(), Some(-1));
        assert_eq!(ab.max_power(), Some(2));
        assert!(a.add(&a.scale(&int(-1))).is_zero());
        assert_eq!(a.shift(3).min_power(), Some(2));
    }

    #[test]
    fn json_round_trip() {
        let a = LaurentPoly::from_coeffs([(-2, int(3)), (10, crate::algebra::rational::rat(-1, 2)), (1, int(1))]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"coeffs":{"-2":"3","1":"1","10":"-1/2"}}"#);
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"coeffs":{"x":"1"}}"#).is_err());
    }
}
