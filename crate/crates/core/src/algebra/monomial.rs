//! Monomials in the power-sum variables `p^(a)_n`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A variable `p^(a)_n`, packed as `(a << 16) | n`.
///
/// Components are 1-based. Packing makes the natural integer order agree with
/// ordering by component first and index second.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub const MAX_INDEX: u32 = 0xFFFF;

    pub fn new(component: usize, index: u32) -> Var {
        assert!(
            (1..=0xFFFF).contains(&component),
            "component {component} out of range"
        );
        assert!(
            (1..=Self::MAX_INDEX).contains(&index),
            "variable index {index} out of range"
        );
        Var(((component as u32) << 16) | index)
    }

    pub fn component(self) -> usize {
        (self.0 >> 16) as usize
    }

    pub fn index(self) -> u32 {
        self.0 & 0xFFFF
    }

    /// Same index, component moved by `offset`.
    pub fn shifted(self, offset: usize) -> Var {
        Var::new(self.component() + offset, self.index())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({}){}", self.component(), self.index())
    }
}

type Factors = SmallVec<[(Var, u32); 4]>;

/// A product of variables with positive exponents, sorted by variable.
///
/// The total weighted degree (index times exponent, summed) is cached because
/// it is the leading key of the term order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Factors,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        let mut factors = Factors::new();
        factors.push((v, exp));
        Monomial {
            degree: v.index() * exp,
            factors,
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated variables
    /// are merged and zero exponents dropped.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut list: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        list.sort_by_key(|&(v, _)| v);
        let mut factors = Factors::new();
        for (v, e) in list {
            match factors.last_mut() {
                Some((last, exp)) if *last == v => *exp += e,
                _ => factors.push((v, e)),
            }
        }
        let degree = factors.iter().map(|&(v, e)| v.index() * e).sum();
        Monomial { degree, factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component_degree(&self, component: usize) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| v.component() == component)
            .map(|&(v, e)| v.index() * e)
            .sum()
    }

    pub fn max_component(&self) -> usize {
        self.factors.last().map_or(0, |(v, _)| v.component())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Factors::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Factors::new();
        let mut j = 0;
        let b = &other.factors;
        for &(v, e) in &self.factors {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                let d = b[j].1;
                j += 1;
                if d > e {
                    return None;
                }
                if d < e {
                    out.push((v, e - d));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            factors: out,
        })
    }

    /// Lowers the exponent of `v` by one, returning the old exponent.
    pub fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.factors.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let mut factors = self.factors.clone();
        let e = factors[pos].1;
        if e == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some((
            e,
            Monomial {
                degree: self.degree - v.index(),
                factors,
            },
        ))
    }

    /// Splits into the factors of `component` and the rest.
    pub fn split_component(&self, component: usize) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self
            .factors
            .iter()
            .partition(|(v, _)| v.component() == component);
        (
            Monomial::from_sorted(inside.into_iter().collect()),
            Monomial::from_sorted(outside.into_iter().collect()),
        )
    }

    /// Applies `f` to every variable. The result is re-sorted.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|&(v, e)| (f(v), e)))
    }

    fn from_sorted(factors: Factors) -> Monomial {
        let degree = factors.iter().map(|&(v, e)| v.index() * e).sum();
        Monomial { degree, factors }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order: total weighted degree first, then the
    /// exponent vectors compared lexicographically with lower-numbered
    /// variables dominant. This is a monomial order, which exact division
    /// relies on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.factors.iter().zip(other.factors.iter()) {
                if va != vb {
                    // The side holding the smaller variable has a positive
                    // exponent where the other has zero.
                    return if va < vb {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v:?}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
