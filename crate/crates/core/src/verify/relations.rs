//! Operator-relation suites on full monomial bases.

use std::collections::HashMap;

use num_traits::One;

use super::{Extra, Identity, ModeRange, VerificationReport};
use crate::algebra::{Monomial, Partition, Poly, Rational, Var};
use crate::fock::{ChargeVector, ModeCache, ModeIndex, PhiPlan, Sign, TensorFockVector};
use crate::symfun::{cached_series, e_perp_all, exp_newton, h_perp_all, SeriesKind};

/// Every monomial in `p^{(1..s)}_n` of total weighted degree at most `d`, in
/// canonical order.
pub fn basis_monomials(s: usize, d: u32) -> Vec<Monomial> {
    let mut per_component: Vec<Vec<Vec<Monomial>>> = Vec::with_capacity(s);
    for a in 1..=s {
        let by_degree = (0..=d)
            .map(|k| {
                Partition::all_of(k)
                    .into_iter()
                    .map(|p| partition_monomial(a, p.parts()))
                    .collect()
            })
            .collect();
        per_component.push(by_degree);
    }
    let mut out = vec![Monomial::one()];
    for comp in &per_component {
        let mut next = Vec::new();
        for m in &out {
            let left = d - m.degree();
            for group in comp.iter().take(left as usize + 1) {
                for x in group {
                    next.push(m.mul(x));
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Monomials in the odd variables `p_1, p_3, ...` of degree at most `d`.
pub fn odd_basis_monomials(d: u32) -> Vec<Monomial> {
    basis_monomials(1, d)
        .into_iter()
        .filter(|m| m.factors().iter().all(|(v, _)| v.index() % 2 == 1))
        .collect()
}

fn partition_monomial(a: usize, parts: &[u32]) -> Monomial {
    Monomial::from_factors(parts.iter().map(|&n| (Var::new(a, n), 1)))
}

fn unit(s: usize, m: &Monomial) -> Poly {
    Poly::monomial(s, m.clone(), Rational::one())
}

fn at(v: &[Poly], k: i64, s: usize) -> Poly {
    if k < 0 || k as usize >= v.len() {
        Poly::zero(s)
    } else {
        v[k as usize].clone()
    }
}

/// Generating-series identities up to degree `d`:
/// `Σ (-1)^j h_i e_j = 0`, `Σ (-1)^j q_i q_j = 0`, `q = S(u)²`, and
/// `q_k = S_k(2t_1, 0, 2t_3, ...)` with the right side built independently.
pub fn series_suite(d: u32) -> Vec<Extra> {
    let n = d as usize;
    let h = cached_series(SeriesKind::H, 1, 1, n);
    let e = cached_series(SeriesKind::E, 1, 1, n);
    let q = cached_series(SeriesKind::Q, 1, 1, n);
    let sx = cached_series(SeriesKind::Sexp, 1, 1, n);
    let alternating = |x: &[Poly], y: &[Poly]| {
        (1..=n).all(|k| {
            let mut acc = Poly::zero(1);
            for j in 0..=k {
                let c = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
                acc.add_product(&x[k - j], &y[j], &c);
            }
            acc.is_zero()
        })
    };
    let square = (0..=n).all(|k| {
        let mut acc = Poly::zero(1);
        for j in 0..=k {
            acc.add_product(&sx[j], &sx[k - j], &Rational::one());
        }
        acc == q[k]
    });
    let jx: Vec<Poly> = (0..=d)
        .map(|j| {
            if j % 2 == 1 {
                Poly::var(1, 1, j).scale(&Rational::from_integer(2.into()))
            } else {
                Poly::zero(1)
            }
        })
        .collect();
    let substituted = exp_newton(1, &jx, n);
    let via_s = (0..=n).all(|k| substituted[k] == q[k]);
    vec![
        Extra::new(format!("H(u)E(-u) = 1 to degree {d}"), alternating(&h, &e)),
        Extra::new(format!("Q(u)Q(-u) = 1 to degree {d}"), alternating(&q, &q)),
        Extra::new(format!("Q(u) = S(u)^2 to degree {d}"), square),
        Extra::new(format!("q_k = S_k(2t_1,0,2t_3,...) for k <= {d}"), via_s),
    ]
}

/// Commutation rules between multiplication series and their adjoints,
/// compared coefficientwise in `u^{-k} v^r` for `k, r ≤ p` on the degree-`d`
/// basis:
/// `(1 - v/u) E^⊥(u) E(v) = E(v) E^⊥(u)`, the same for `H`,
/// `H^⊥(u) E(v) = (1 + v/u) E(v) H^⊥(u)` and `E^⊥(u) H(v) = (1 + v/u) H(v) E^⊥(u)`.
pub fn lemma_suite(d: u32, p: u32) -> Vec<Extra> {
    let p = p as i64;
    let h = cached_series(SeriesKind::H, 1, 1, p as usize);
    let e = cached_series(SeriesKind::E, 1, 1, p as usize);
    let mut ok = [true; 4];
    let mut count = 0usize;
    for m in basis_monomials(1, d) {
        let f = unit(1, &m);
        let hp_f = h_perp_all(&f, 1);
        let ep_f = e_perp_all(&f, 1);
        let mut ep_e = Vec::new();
        let mut hp_h = Vec::new();
        let mut hp_e = Vec::new();
        let mut ep_h = Vec::new();
        for r in 0..=p as usize {
            let ef = &e[r] * &f;
            let hf = &h[r] * &f;
            ep_e.push(e_perp_all(&ef, 1));
            hp_e.push(h_perp_all(&ef, 1));
            hp_h.push(h_perp_all(&hf, 1));
            ep_h.push(e_perp_all(&hf, 1));
        }
        let series = |v: &[Poly], r: i64| at(v, r, 1);
        let nested = |v: &[Vec<Poly>], r: i64, k: i64| {
            if r < 0 {
                Poly::zero(1)
            } else {
                at(&v[r as usize], k, 1)
            }
        };
        for k in 0..=p {
            for r in 0..=p {
                count += 1;
                let lhs = nested(&ep_e, r, k) - nested(&ep_e, r - 1, k - 1);
                ok[0] &= lhs == &series(&e, r) * &at(&ep_f, k, 1);
                let lhs = nested(&hp_h, r, k) - nested(&hp_h, r - 1, k - 1);
                ok[1] &= lhs == &series(&h, r) * &at(&hp_f, k, 1);
                let rhs = &series(&e, r) * &at(&hp_f, k, 1) + &series(&e, r - 1) * &at(&hp_f, k - 1, 1);
                ok[2] &= nested(&hp_e, r, k) == rhs;
                let rhs = &series(&h, r) * &at(&ep_f, k, 1) + &series(&h, r - 1) * &at(&ep_f, k - 1, 1);
                ok[3] &= nested(&ep_h, r, k) == rhs;
            }
        }
    }
    let detail = format!("{count} coefficient checks per rule");
    [
        "(1-v/u)E^perp(u)E(v) = E(v)E^perp(u)",
        "(1-v/u)H^perp(u)H(v) = H(v)H^perp(u)",
        "H^perp(u)E(v) = (1+v/u)E(v)H^perp(u)",
        "E^perp(u)H(v) = (1+v/u)H(v)E^perp(u)",
    ]
    .iter()
    .zip(ok)
    .map(|(name, pass)| Extra::new(*name, pass).with_detail(detail.clone()))
    .collect()
}

#[derive(Clone, Copy, Debug)]
struct Op {
    sign: Sign,
    a: usize,
    n: i64,
}

impl Op {
    fn family(self, s: usize) -> usize {
        match self.sign {
            Sign::Plus => self.a - 1,
            Sign::Minus => s + self.a - 1,
        }
    }

    fn delta(self) -> i64 {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn level(self, m: &ChargeVector) -> i64 {
        ModeCache::level(self.sign, self.a, ModeIndex(self.n), m)
    }

    fn negates(self, m: &ChargeVector) -> bool {
        m.prefix_sum(self.a).rem_euclid(2) == 1
    }

    fn name(self) -> &'static str {
        match self.sign {
            Sign::Plus => "psi+",
            Sign::Minus => "psi-",
        }
    }
}

fn charges(s: usize, c: i64) -> Vec<ChargeVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-c..=c).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(ChargeVector).collect()
}

/// `±a = ±b` as a cancellation test without allocating the sum.
fn sums_to_zero(a: &Poly, b: &Poly, same_sign: bool) -> bool {
    if same_sign {
        a.len() == b.len() && a.iter().zip(b.iter()).all(|((ma, ca), (mb, cb))| ma == mb && *ca == -cb)
    } else {
        a == b
    }
}

struct CompositionMemo<'c> {
    cache: &'c mut ModeCache,
    s: usize,
    first: HashMap<(usize, i64), Poly>,
    second: HashMap<(usize, i64, usize, i64), Poly>,
}

impl CompositionMemo<'_> {
    fn first(&mut self, f: &Poly, y: Op, ly: i64) -> Poly {
        let key = (y.family(self.s), ly);
        if let Some(p) = self.first.get(&key) {
            return p.clone();
        }
        let p = self.cache.part(y.sign, y.a, ly, f).expect("component checked");
        self.first.insert(key, p.clone());
        p
    }

    /// Polynomial part of `ψ_x ψ_y (z^m f)` given the two levels.
    fn pair(&mut self, f: &Poly, x: Op, lx: i64, y: Op, ly: i64) -> &Poly {
        let key = (x.family(self.s), lx, y.family(self.s), ly);
        if !self.second.contains_key(&key) {
            let inner = self.first(f, y, ly);
            let p = self.cache.part(x.sign, x.a, lx, &inner).expect("component checked");
            self.second.insert(key, p);
        }
        &self.second[&key]
    }
}

/// Anticommutation relations of `ψ^{±(a)}_i` for `|i| ≤ k - 1/2` and the
/// intertwining rule `z_a ψ^{±(b)}_i = ε_{ab} ψ^{±(b)}_{i ∓ δ_{ab}} z_a`
/// (`ε_{ab} = -1` iff `b > a`), on every `z^m f` with `|m_a| ≤ c` and
/// `f` a monomial of degree at most `d`.
pub fn charged_clifford_suite(d: u32, k: i64, s: usize, c: i64) -> Vec<Extra> {
    let ops: Vec<Op> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .flat_map(|sign| (1..=s).flat_map(move |a| (1 - k..=k).map(move |n| Op { sign, a, n })))
        .collect();
    let basis = basis_monomials(s, d);
    let sectors = charges(s, c);
    let mut cache = ModeCache::new(s);
    // Failure counts for (++, --, +-) and the intertwining rule.
    let mut bad = [0usize; 4];
    let mut first_failure: [Option<String>; 4] = Default::default();
    let mut checks = [0usize; 4];
    for mono in &basis {
        let f = unit(s, mono);
        let mut memo = CompositionMemo {
            cache: &mut cache,
            s,
            first: HashMap::new(),
            second: HashMap::new(),
        };
        for m in &sectors {
            for (ix, &x) in ops.iter().enumerate() {
                for &y in &ops[ix..] {
                    let slot = match (x.sign, y.sign) {
                        (Sign::Plus, Sign::Plus) => 0,
                        (Sign::Minus, Sign::Minus) => 1,
                        _ => 2,
                    };
                    checks[slot] += 1;
                    let mx = m.with_delta(x.a, x.delta());
                    let my = m.with_delta(y.a, y.delta());
                    let (lx0, ly0) = (x.level(m), y.level(m));
                    let (lx1, ly1) = (x.level(&my), y.level(&mx));
                    let sign_xy = y.negates(m) ^ x.negates(&my);
                    let sign_yx = x.negates(m) ^ y.negates(&mx);
                    let xy = memo.pair(&f, x, lx1, y, ly0).clone();
                    let yx = memo.pair(&f, y, ly1, x, lx0);
                    let expect_id = x.sign != y.sign && x.a == y.a && x.n + y.n == 1;
                    let ok = if expect_id {
                        let mut sum = Poly::zero(s);
                        sum.add_scaled(&xy, &if sign_xy { -Rational::one() } else { Rational::one() });
                        sum.add_scaled(yx, &if sign_yx { -Rational::one() } else { Rational::one() });
                        sum == f
                    } else {
                        sums_to_zero(&xy, yx, sign_xy == sign_yx)
                    };
                    if !ok {
                        bad[slot] += 1;
                        first_failure[slot].get_or_insert_with(|| {
                            format!(
                                "{}^({})[{}] {}^({})[{}] on z^{m:?} {mono:?}",
                                x.name(),
                                x.a,
                                x.n,
                                y.name(),
                                y.a,
                                y.n
                            )
                        });
                    }
                }
            }
            for &x in &ops {
                let lx = x.level(m);
                let lhs = memo.first(&f, x, lx);
                for a in 1..=s {
                    checks[3] += 1;
                    let za = m.with_delta(a, 1);
                    let shifted = Op {
                        n: x.n - if a == x.a { x.delta() } else { 0 },
                        ..x
                    };
                    let rhs = memo
                        .cache
                        .part(shifted.sign, shifted.a, shifted.level(&za), &f)
                        .expect("component checked");
                    let eps_neg = x.a > a;
                    let same = x.negates(m) == (shifted.negates(&za) ^ eps_neg);
                    let ok = if same {
                        lhs == rhs
                    } else {
                        sums_to_zero(&lhs, &rhs, true)
                    };
                    if !ok {
                        bad[3] += 1;
                        first_failure[3].get_or_insert_with(|| {
                            format!("z_{a} {}^({})[{}] on z^{m:?} {mono:?}", x.name(), x.a, x.n)
                        });
                    }
                }
            }
        }
    }
    let names = [
        "{psi+, psi+} = 0",
        "{psi-, psi-} = 0",
        "{psi+, psi-} = delta",
        "z_a intertwining",
    ];
    (0..4)
        .map(|i| {
            let mut detail = format!(
                "{} cases, {} basis vectors, modes n in [{}, {}]",
                checks[i],
                basis.len() * sectors.len(),
                1 - k,
                k
            );
            if let Some(fail) = &first_failure[i] {
                detail.push_str(&format!("; {} failures, first: {fail}", bad[i]));
            }
            Extra::new(format!("s={s} {}", names[i]), bad[i] == 0).with_detail(detail)
        })
        .collect()
}

/// `φ_m φ_n + φ_n φ_m = 2 (-1)^m δ_{m+n,0}` for `|m|, |n| ≤ k` on the odd
/// basis of degree at most `d`, and `φ_0² = 1`.
pub fn neutral_clifford_suite(d: u32, k: i64) -> Vec<Extra> {
    let mut bad = 0usize;
    let mut first_failure = None;
    let mut checks = 0usize;
    let mut square_ok = true;
    let two = Rational::from_integer(2.into());
    for mono in odd_basis_monomials(d) {
        let f = unit(1, &mono);
        let plan = PhiPlan::new(&f).expect("odd basis");
        let once: Vec<Poly> = (-k..=k).map(|n| plan.apply(n)).collect();
        let plans: Vec<PhiPlan> = once.iter().map(|g| PhiPlan::new(g).expect("odd image")).collect();
        let idx = |n: i64| (n + k) as usize;
        square_ok &= plans[idx(0)].apply(0) == f;
        for m in -k..=k {
            for n in m..=k {
                checks += 1;
                let mut sum = plans[idx(n)].apply(m);
                sum.add_scaled(&plans[idx(m)].apply(n), &Rational::one());
                let expect = if m + n == 0 {
                    let c = if m.rem_euclid(2) == 0 { two.clone() } else { -two.clone() };
                    f.scale(&c)
                } else {
                    Poly::zero(1)
                };
                if sum != expect {
                    bad += 1;
                    first_failure.get_or_insert_with(|| format!("phi_{m} phi_{n} on {mono:?}"));
                }
            }
        }
    }
    let mut detail = format!("{checks} cases, modes in [{}, {k}]", -k);
    if let Some(fail) = first_failure {
        detail.push_str(&format!("; {bad} failures, first: {fail}"));
    }
    vec![
        Extra::new("{phi_m, phi_n} = 2(-1)^m delta", bad == 0).with_detail(detail),
        Extra::new("phi_0^2 = 1", square_ok),
    ]
}

/// Runs every relation suite with degree bound `d` and mode bound `k`: the
/// series identities, the adjoint commutation rules, the one-component and
/// (for `s ≥ 2`) `s`-component charged relations with `|m_a| ≤ 2`, and the
/// neutral relations.
pub fn selfcheck_relations(d: u32, k: i64, s: usize) -> VerificationReport {
    let mut extras = series_suite(d);
    extras.extend(lemma_suite(d, d));
    extras.extend(charged_clifford_suite(d, k, 1, 2));
    if s >= 2 {
        extras.extend(charged_clifford_suite(d, k, s, 2));
    }
    extras.extend(neutral_clifford_suite(d, k));
    let mut ranges: Vec<ModeRange> = (1..=s.max(1))
        .map(|a| ModeRange {
            operator: "psi+/psi-".into(),
            component: a,
            lo: 1 - k,
            hi: k,
        })
        .collect();
    ranges.push(ModeRange {
        operator: "phi".into(),
        component: 1,
        lo: -k,
        hi: k,
    });
    VerificationReport::new(Identity::Relations, TensorFockVector::zero(s.max(1)), extras, ranges)
}
