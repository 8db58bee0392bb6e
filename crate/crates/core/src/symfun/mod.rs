//! Generating series of symmetric functions and the Schur-type polynomials
//! built from them.
//!
//! Everything is expressed in power sums `p^(a)_n`. The elementary Schur
//! polynomials `S_k(t)` with `t_n = p_n / n` therefore coincide with the
//! complete symmetric functions `h_k`.

mod qschur;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Monomial, Partition, Poly, PolyMatrix, Rational, Var};
use crate::error::{Error, Result};

pub use qschur::{q_pair, q_schur, q_schur_odd_expansion, shifted_q_pair};

/// Which generating series a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesKind {
    /// `H(u) = Σ h_k u^k = exp(Σ p_n u^n / n)`.
    H,
    /// `E(u) = Σ e_k u^k = exp(Σ (-1)^(n+1) p_n u^n / n)`.
    E,
    /// `Q(u) = E(u) H(u)`.
    Q,
    /// `S(u) = exp(Σ_{n odd} p_n u^n / n)`, so that `Q(u) = S(u)^2`.
    Sexp,
}

/// Coefficients `k = 0..=cutoff` of one generating series in component `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub kind: SeriesKind,
    pub s: usize,
    pub component: usize,
    coeffs: Arc<Vec<Poly>>,
    cutoff: usize,
}

impl SeriesTable {
    pub fn new(kind: SeriesKind, s: usize, component: usize, cutoff: usize) -> Result<Self> {
        check_component(s, component)?;
        Ok(SeriesTable {
            kind,
            s,
            component,
            coeffs: cached_series(kind, s, component, cutoff),
            cutoff,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Coefficient of `u^k`; zero for negative `k`. Panics above the cutoff.
    pub fn coeff(&self, k: i64) -> Poly {
        if k < 0 {
            return Poly::zero(self.s);
        }
        let k = k as usize;
        assert!(k <= self.cutoff, "coefficient {k} beyond cutoff {}", self.cutoff);
        self.coeffs[k].clone()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs[..=self.cutoff]
    }
}

pub fn series_table(kind: SeriesKind, s: usize, a: usize, cutoff: usize) -> Result<SeriesTable> {
    SeriesTable::new(kind, s, a, cutoff)
}

pub(crate) fn check_component(s: usize, a: usize) -> Result<()> {
    if a == 0 || a > s {
        return Err(Error::ComponentOutOfRange { component: a, s });
    }
    Ok(())
}

type SeriesKey = (SeriesKind, usize, usize);

fn series_cache() -> &'static RwLock<HashMap<SeriesKey, Arc<Vec<Poly>>>> {
    static CACHE: OnceLock<RwLock<HashMap<SeriesKey, Arc<Vec<Poly>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared, memoized coefficient list of length at least `cutoff + 1`.
///
/// Tables are immutable once published; a longer request replaces the entry
/// with an extended copy.
pub(crate) fn cached_series(kind: SeriesKind, s: usize, a: usize, cutoff: usize) -> Arc<Vec<Poly>> {
    let key = (kind, s, a);
    if let Some(t) = series_cache().read().unwrap().get(&key) {
        if t.len() > cutoff {
            return Arc::clone(t);
        }
    }
    // Round up to limit how often tables get rebuilt.
    let target = cutoff.max(8).next_power_of_two().max(cutoff + 1);
    let table = Arc::new(build_series(kind, s, a, target));
    let mut guard = series_cache().write().unwrap();
    let entry = guard.entry(key).or_insert_with(|| Arc::clone(&table));
    if entry.len() < table.len() {
        *entry = Arc::clone(&table);
    }
    Arc::clone(entry)
}

/// `j * x_j` for the exponent `Σ x_j u^j` of each exponential series, as the
/// coefficient of `p_j`.
fn newton_weight(kind: SeriesKind, j: u32) -> Rational {
    let odd = j % 2 == 1;
    match kind {
        SeriesKind::H => Rational::one(),
        SeriesKind::E if odd => Rational::one(),
        SeriesKind::E => -Rational::one(),
        SeriesKind::Q if odd => Rational::from_integer(BigInt::from(2)),
        SeriesKind::Sexp if odd => Rational::one(),
        SeriesKind::Q | SeriesKind::Sexp => Rational::zero(),
    }
}

fn build_series(kind: SeriesKind, s: usize, a: usize, cutoff: usize) -> Vec<Poly> {
    if kind == SeriesKind::Q {
        let e = cached_series(SeriesKind::E, s, a, cutoff);
        let h = cached_series(SeriesKind::H, s, a, cutoff);
        return (0..=cutoff)
            .map(|k| {
                let mut acc = Poly::zero(s);
                for i in 0..=k {
                    acc.add_product(&e[i], &h[k - i], &Rational::one());
                }
                acc
            })
            .collect();
    }
    let x: Vec<Poly> = (0..=cutoff as u32)
        .map(|j| {
            if j == 0 {
                Poly::zero(s)
            } else {
                Poly::monomial(s, Monomial::var(Var::new(a, j)), newton_weight(kind, j))
            }
        })
        .collect();
    exp_newton(s, &x, cutoff)
}

/// Coefficients of `exp(Σ_j y_j u^j / j)` where `jx[j] = y_j`, via the
/// recursion `k S_k = Σ_{j=1..k} y_j S_{k-j}`.
pub(crate) fn exp_newton(s: usize, jx: &[Poly], cutoff: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one(s)];
    for k in 1..=cutoff {
        let mut acc = Poly::zero(s);
        for j in 1..=k {
            if j < jx.len() && !jx[j].is_zero() {
                acc.add_product(&jx[j], &out[k - j], &Rational::one());
            }
        }
        out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    out
}

/// `S_k(t)` in component `a`; zero for `k < 0`.
pub fn elementary_schur(k: i64, s: usize, a: usize) -> Result<Poly> {
    check_component(s, a)?;
    if k < 0 {
        return Ok(Poly::zero(s));
    }
    Ok(cached_series(SeriesKind::H, s, a, k as usize)[k as usize].clone())
}

/// Finite-support constants `c_n`, added to the time variables `t_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ShiftVector {
    entries: BTreeMap<u32, Rational>,
}

impl ShiftVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (u32, Rational)>>(it: I) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, c) in it {
            if n == 0 {
                return Err(Error::invalid("shift indices start at 1"));
            }
            if !c.is_zero() {
                entries.insert(n, c);
            }
        }
        Ok(ShiftVector { entries })
    }

    pub fn get(&self, n: u32) -> Rational {
        self.entries.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.entries.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `S_0(c), ..., S_cutoff(c)`.
    pub fn schur_values(&self, cutoff: usize) -> Vec<Rational> {
        let mut out = vec![Rational::one()];
        for k in 1..=cutoff {
            let mut acc = Rational::zero();
            for (n, c) in &self.entries {
                let n = *n as usize;
                if n <= k {
                    acc += Rational::from_integer(BigInt::from(n)) * c * &out[k - n];
                }
            }
            out.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        out
    }
}

/// `Σ_{i=0..k} S_i(c) F_{k-i}` for a coefficient list `F` of some series:
/// the series multiplied by `exp(Σ c_n u^n)`.
pub(crate) fn shift_series(table: &[Poly], shift: &ShiftVector, k: i64, s: usize) -> Poly {
    if k < 0 {
        return Poly::zero(s);
    }
    let k = k as usize;
    let sc = shift.schur_values(k);
    let mut acc = Poly::zero(s);
    for i in 0..=k {
        if !sc[i].is_zero() {
            acc.add_scaled(&table[k - i], &sc[i]);
        }
    }
    acc
}

/// `S_k(t_1 + c_1, t_2 + c_2, ...)` in component `a`.
pub fn shifted_elementary_schur(k: i64, shift: &ShiftVector, s: usize, a: usize) -> Result<Poly> {
    check_component(s, a)?;
    if k < 0 {
        return Ok(Poly::zero(s));
    }
    let h = cached_series(SeriesKind::H, s, a, k as usize);
    Ok(shift_series(&h, shift, k, s))
}

/// `S_k(t~ + c)` with `t~_n = 2 t_n` for odd `n` and `0` for even `n`; these
/// are the coefficients of `exp(Σ c_n u^n) Q(u)`.
pub fn shifted_q(k: i64, shift: &ShiftVector, s: usize, a: usize) -> Result<Poly> {
    check_component(s, a)?;
    if k < 0 {
        return Ok(Poly::zero(s));
    }
    let q = cached_series(SeriesKind::Q, s, a, k as usize);
    Ok(shift_series(&q, shift, k, s))
}

/// Schur polynomial `S_λ = det[S_{λ_i + j - i}]`.
pub fn jacobi_trudi(lambda: &Partition, s: usize, a: usize) -> Result<Poly> {
    check_component(s, a)?;
    let parts = lambda.parts();
    let n = parts.len();
    let top = parts.first().copied().unwrap_or(0) as usize + n;
    let h = cached_series(SeriesKind::H, s, a, top);
    let m = PolyMatrix::from_fn(s, n, |i, j| {
        let k = parts[i] as i64 + j as i64 - i as i64;
        if k < 0 {
            Poly::zero(s)
        } else {
            h[k as usize].clone()
        }
    })?;
    m.det()
}

/// Applies `g^⊥` to `f`, where `g^⊥` replaces each `p^(a)_n` in `g` by
/// `n ∂/∂p^(a)_n`.
pub fn adjoint_apply(g: &Poly, a: usize, f: &Poly) -> Result<Poly> {
    check_component(f.s(), a)?;
    let mut out = Poly::zero(f.s());
    for (m, c) in g.iter() {
        let mut cur = f.clone();
        for &(v, e) in m.factors() {
            if v.component() != a {
                return Err(Error::invalid(format!(
                    "adjoint operand uses component {} instead of {a}",
                    v.component()
                )));
            }
            let n = Rational::from_integer(BigInt::from(v.index()));
            for _ in 0..e {
                cur = cur.partial(a, v.index()).scale(&n);
            }
        }
        out.add_scaled(&cur, c);
    }
    Ok(out)
}

/// `h_k^⊥ f` for all `k`: coefficients of `f(p_n + w^n)`.
pub fn h_perp_all(f: &Poly, a: usize) -> Vec<Poly> {
    f.shift_coefficients(a, |_| Some(Rational::one()))
}

/// `e_k^⊥ f` for all `k`: coefficients of `f(p_n + (-1)^(n+1) w^n)`.
pub fn e_perp_all(f: &Poly, a: usize) -> Vec<Poly> {
    f.shift_coefficients(a, |n| {
        Some(if n % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        })
    })
}
