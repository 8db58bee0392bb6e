//! JSON wire formats.
//!
//! Polynomials are written as
//! `{"s": s, "basis": "p"|"t", "terms": [{"coeff": "n/d", "mono": {"a:n": e}}]}`
//! with terms in descending canonical order and monomial keys in variable
//! order, so output is byte-stable. In the `t` basis each coefficient is
//! multiplied by `Π n^e`, since `p_n = n t_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{format_rational, parse_rational, Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::fock::{ChargeVector, FockVector, TensorFockVector};
use crate::symfun::ShiftVector;

/// Variable basis used for rendering and ingestion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    P,
    T,
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Basis::P),
            "t" => Ok(Basis::T),
            other => Err(Error::parse(format!("unknown basis '{other}'"))),
        }
    }
}

/// `Π n^e` over the factors `p_n^e` of a monomial.
pub fn t_factor(m: &Monomial) -> Rational {
    let mut out = BigInt::one();
    for &(v, e) in m.factors() {
        out *= BigInt::from(v.index()).pow(e);
    }
    Rational::from_integer(out)
}

/// Coefficient of `m` after rewriting into `basis`.
pub fn basis_coeff(m: &Monomial, c: &Rational, basis: Basis) -> Rational {
    match basis {
        Basis::P => c.clone(),
        Basis::T => c * t_factor(m),
    }
}

/// Inverse of [`basis_coeff`].
pub fn from_basis_coeff(m: &Monomial, c: &Rational, basis: Basis) -> Rational {
    match basis {
        Basis::P => c.clone(),
        Basis::T => c / t_factor(m),
    }
}

struct MonoKeys<'a>(&'a Monomial);

impl Serialize for MonoKeys<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.factors().len()))?;
        for &(v, e) in self.0.factors() {
            map.serialize_entry(&format!("{}:{}", v.component(), v.index()), &e)?;
        }
        map.end()
    }
}

struct Term<'a> {
    mono: &'a Monomial,
    coeff: Rational,
}

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Term", 2)?;
        st.serialize_field("coeff", &format_rational(&self.coeff))?;
        st.serialize_field("mono", &MonoKeys(self.mono))?;
        st.end()
    }
}

struct Terms<'a>(&'a Poly, Basis);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for (m, c) in self.0.iter_desc() {
            seq.serialize_element(&Term {
                mono: m,
                coeff: basis_coeff(m, c, self.1),
            })?;
        }
        seq.end()
    }
}

/// A polynomial paired with the basis to write it in.
#[derive(Clone, Copy, Debug)]
pub struct PolyRepr<'a> {
    pub poly: &'a Poly,
    pub basis: Basis,
}

impl Serialize for PolyRepr<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Poly", 3)?;
        st.serialize_field("s", &self.poly.s())?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("terms", &Terms(self.poly, self.basis))?;
        st.end()
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            poly: self,
            basis: Basis::P,
        }
        .serialize(ser)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: String,
    mono: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    s: usize,
    #[serde(default)]
    basis: Basis,
    terms: Vec<RawTerm>,
}

fn parse_var_key(key: &str, s: usize) -> Result<Var> {
    let bad = || Error::parse(format!("bad variable key '{key}'"));
    let (a, n) = key.split_once(':').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > s {
        return Err(Error::ComponentOutOfRange { component: a, s });
    }
    if n == 0 || n > Var::MAX_INDEX {
        return Err(bad());
    }
    Ok(Var::new(a, n))
}

impl TryFrom<RawPoly> for Poly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Poly> {
        if raw.s == 0 {
            return Err(Error::parse("component count must be positive"));
        }
        let mut out = Poly::zero(raw.s);
        for t in raw.terms {
            let mut factors = Vec::with_capacity(t.mono.len());
            for (k, e) in &t.mono {
                if *e == 0 {
                    return Err(Error::parse(format!("zero exponent for '{k}'")));
                }
                factors.push((parse_var_key(k, raw.s)?, *e));
            }
            let m = Monomial::from_factors(factors);
            let c = parse_rational(&t.coeff)?;
            let c = from_basis_coeff(&m, &c, raw.basis);
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Poly::try_from(RawPoly::deserialize(de)?).map_err(D::Error::custom)
    }
}

struct Sector<'a> {
    charge: &'a ChargeVector,
    poly: PolyRepr<'a>,
}

impl Serialize for Sector<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Sector", 2)?;
        st.serialize_field("charge", &self.charge.0)?;
        st.serialize_field("poly", &self.poly)?;
        st.end()
    }
}

/// A Fock vector paired with the basis for its polynomial parts.
#[derive(Clone, Copy, Debug)]
pub struct FockRepr<'a> {
    pub vector: &'a FockVector,
    pub basis: Basis,
}

impl Serialize for FockRepr<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let sectors: Vec<Sector> = self
            .vector
            .sectors()
            .map(|(m, f)| Sector {
                charge: m,
                poly: PolyRepr {
                    poly: f,
                    basis: self.basis,
                },
            })
            .collect();
        let mut st = ser.serialize_struct("FockVector", 2)?;
        st.serialize_field("s", &self.vector.s())?;
        st.serialize_field("sectors", &sectors)?;
        st.end()
    }
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FockRepr {
            vector: self,
            basis: Basis::P,
        }
        .serialize(ser)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSector {
    charge: Vec<i64>,
    poly: Poly,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFock {
    s: usize,
    sectors: Vec<RawSector>,
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFock::deserialize(de)?;
        let mut out = FockVector::zero(raw.s);
        for sec in raw.sectors {
            out.add_sector(ChargeVector(sec.charge), sec.poly)
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

struct TensorSector<'a> {
    left: &'a ChargeVector,
    right: &'a ChargeVector,
    poly: &'a Poly,
}

impl Serialize for TensorSector<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("TensorSector", 3)?;
        st.serialize_field("left", &self.left.0)?;
        st.serialize_field("right", &self.right.0)?;
        st.serialize_field("poly", self.poly)?;
        st.end()
    }
}

impl Serialize for TensorFockVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let sectors: Vec<TensorSector> = self
            .sectors()
            .map(|((l, r), f)| TensorSector {
                left: l,
                right: r,
                poly: f,
            })
            .collect();
        let mut st = ser.serialize_struct("TensorFockVector", 2)?;
        st.serialize_field("s", &self.s())?;
        st.serialize_field("sectors", &sectors)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensorSector {
    left: Vec<i64>,
    right: Vec<i64>,
    poly: Poly,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    s: usize,
    sectors: Vec<RawTensorSector>,
}

impl<'de> Deserialize<'de> for TensorFockVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTensor::deserialize(de)?;
        let mut out = TensorFockVector::zero(raw.s);
        for sec in raw.sectors {
            out.add_sector(ChargeVector(sec.left), ChargeVector(sec.right), &sec.poly)
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

impl Serialize for ShiftVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(u32, &Rational)> = self.entries().collect();
        let mut map = ser.serialize_map(Some(entries.len()))?;
        for (n, c) in entries {
            map.serialize_entry(&n.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ShiftVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(de)?;
        let mut entries = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let n: u32 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad shift index {k:?}")))?;
            entries.push((n, parse_rational(&v).map_err(D::Error::custom)?));
        }
        ShiftVector::from_entries(entries).map_err(D::Error::custom)
    }
}

/// Rationals as `"n/d"` strings; integers are also accepted on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Int(i64),
}

impl RawRational {
    fn value(self) -> Result<Rational> {
        match self {
            RawRational::Text(t) => parse_rational(&t),
            RawRational::Int(n) => Ok(Rational::from_integer(n.into())),
        }
    }
}

/// `serde(with)` adapter for `Vec<Rational>`.
pub mod rational_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RawRational>::deserialize(de)?
            .into_iter()
            .map(|r| r.value().map_err(D::Error::custom))
            .collect()
    }
}

/// `serde(with)` adapter for `Vec<Vec<Rational>>`.
pub mod rational_grid {
    use super::*;

    struct Row<'a>(&'a [Rational]);

    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
            rational_list::serialize(self.0, ser)
        }
    }

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for row in v {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<RawRational>>::deserialize(de)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.value().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parses any of the wire types from JSON text.
pub fn from_json_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))
}
