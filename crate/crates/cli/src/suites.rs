//! Seeded randomized instance suites.
//!
//! Every suite owns a ChaCha stream derived from the caller's seed and a
//! per-suite salt, so results are reproducible and independent of the order
//! in which suites run. Each verifier call is audited: the summation ranges
//! are widened and the residual must not change.

use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tauforge::algebra::{LaurentPoly, Partition, Poly, Rational, StrictPartition};
use tauforge::fock::{apply_phi_sum, apply_psi_sum, psi_mode, ChargeVector, FockVector, ModeIndex, Sign};
use tauforge::symfun::{jacobi_trudi, q_schur, q_schur_odd_expansion, ShiftVector};
use tauforge::taugen::{
    bkp_closed_form_chi, bkp_coeff_oracle, bkp_coeff_pf, bkp_coeff_pf_leading_pad, epsilon_closed,
    epsilon_sign, kp_closed_form, kp_coeff_det, kp_coeff_oracle, lkdv_tau, shifted_laurent,
    skp_assignment_sum, skp_coeff_assignment, skp_coeff_full, BkpSpec, KpSpec, LkdvSpec, SkpSpec,
};
use tauforge::verify::{
    verify_bkp_with, verify_kp_with, verify_lkdv_with, verify_skp_with, VerificationReport,
    VerifyOptions,
};

const LISTED_FAILURES: usize = 5;
/// Resampling budget per requested case when outputs may vanish.
const ATTEMPTS_PER_CASE: usize = 50;

/// Outcome of one suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
    /// Verifier calls whose range-extension audit ran.
    pub audits: usize,
    pub audit_failures: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.audit_failures == 0 && self.cases > 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failed, {} audited verifier calls",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failed,
            self.audits
        )?;
        if self.audit_failures > 0 {
            write!(f, ", {} range-extension mismatches", self.audit_failures)?;
        }
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

struct Recorder(SuiteResult);

impl Recorder {
    fn new(name: impl Into<String>) -> Self {
        Recorder(SuiteResult {
            name: name.into(),
            ..SuiteResult::default()
        })
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.0.cases += 1;
        if !ok {
            self.0.failed += 1;
            if self.0.examples.len() < LISTED_FAILURES {
                self.0.examples.push(what());
            }
        }
    }

    fn error(&mut self, err: impl fmt::Display, what: impl FnOnce() -> String) {
        self.check(false, || format!("{}: error {err}", what()));
    }

    /// Records the audit and returns whether the identity itself held.
    fn audit(&mut self, report: &VerificationReport) -> bool {
        let mut held = report.residual.is_zero();
        for e in &report.extras {
            if e.name == "range_extension" {
                self.0.audits += 1;
                if !e.passed {
                    self.0.audit_failures += 1;
                }
            } else {
                held &= e.passed;
            }
        }
        held
    }

    /// One verifier call expected to give `expect`.
    fn verified(
        &mut self,
        report: tauforge::Result<VerificationReport>,
        expect: bool,
        what: impl FnOnce() -> String,
    ) {
        match report {
            Ok(r) => {
                let held = self.audit(&r);
                self.check(held == expect, what);
            }
            Err(e) => self.error(e, what),
        }
    }

    fn finish(self) -> SuiteResult {
        self.0
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn audited() -> VerifyOptions {
    VerifyOptions::audited()
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(num.into(), den.into())
}

/// Nonzero Laurent polynomial with support in `[lo, hi]`.
fn laurent(rng: &mut impl Rng, lo: i64, hi: i64, max_terms: usize) -> LaurentPoly {
    let powers: Vec<i64> = (lo..=hi).collect();
    let n = rng.gen_range(1..=max_terms.min(powers.len()));
    LaurentPoly::from_coeffs(
        powers
            .choose_multiple(rng, n)
            .map(|&k| (k, small_rational(rng)))
            .collect::<Vec<_>>(),
    )
}

fn alpha(rng: &mut impl Rng, l: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..l).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Shift vector with at most three nonzero entries taken from `[-2, 2]`.
fn shift(rng: &mut impl Rng) -> ShiftVector {
    let values = [(-2i64, 1i64), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)];
    let indices: Vec<u32> = (1..=5).collect();
    let support = rng.gen_range(0..=3);
    ShiftVector::from_entries(indices.choose_multiple(rng, support).map(|&n| {
        let (p, q) = *values.choose(rng).unwrap();
        (n, Rational::new(p.into(), q.into()))
    }))
    .expect("indices are positive")
}

fn kp_vector(m: i64, f: Poly) -> FockVector {
    FockVector::sector(ChargeVector(vec![m]), f).expect("one-component sector")
}

/// Size bounds of the randomized generating-function specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    /// `A` is supported in `[-support, support]`.
    pub support: i64,
    pub alpha_lo: i64,
    pub alpha_hi: i64,
    pub max_l: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            support: 3,
            alpha_lo: -2,
            alpha_hi: 4,
            max_l: 3,
        }
    }
}

fn random_rows(rng: &mut impl Rng, b: &OracleBounds, l: usize) -> (Vec<LaurentPoly>, Vec<i64>) {
    let a = (0..l).map(|_| laurent(rng, -b.support, b.support, 3)).collect();
    (a, alpha(rng, l, b.alpha_lo, b.alpha_hi))
}

/// Determinant coefficients against the fermionic mode product.
pub fn kp_oracle_suite(seed: u64, cases: usize, bounds: OracleBounds) -> SuiteResult {
    let mut rng = rng(seed, 1);
    let mut rec = Recorder::new("KP determinant = fermionic oracle");
    for _ in 0..cases {
        let l = rng.gen_range(1..=bounds.max_l);
        let (a, al) = random_rows(&mut rng, &bounds, l);
        let what = || format!("A={a:?} alpha={al:?}");
        let spec = KpSpec::new(a.clone(), al.clone()).expect("valid rows");
        match (kp_coeff_det(&spec), kp_coeff_oracle(&spec)) {
            (Ok(d), Ok(o)) => rec.check(d == o, what),
            (Err(e), _) | (_, Err(e)) => rec.error(e, what),
        }
    }
    rec.finish()
}

/// Pfaffian coefficients against the neutral mode product.
pub fn bkp_oracle_suite(seed: u64, cases: usize, bounds: OracleBounds) -> SuiteResult {
    let mut rng = rng(seed, 2);
    let mut rec = Recorder::new("BKP Pfaffian = neutral-fermion oracle");
    for _ in 0..cases {
        let l = rng.gen_range(1..=bounds.max_l);
        let (a, al) = random_rows(&mut rng, &bounds, l);
        let what = || format!("A={a:?} alpha={al:?}");
        let spec = BkpSpec::new(a.clone(), al.clone()).expect("valid rows");
        match (bkp_coeff_pf(&spec), bkp_coeff_oracle(&spec)) {
            (Ok(p), Ok(o)) => rec.check(p == o, what),
            (Err(e), _) | (_, Err(e)) => rec.error(e, what),
        }
    }
    rec.finish()
}

/// Odd-length reduction: a trailing `A = 1, α = 0` row reproduces the
/// odd coefficient, a leading one its negative; the odd-length Q-function
/// expansion equals the padded Pfaffian.
pub fn bkp_reduction_suite(seed: u64, cases: usize, bounds: OracleBounds) -> SuiteResult {
    let mut rng = rng(seed, 3);
    let mut rec = Recorder::new("BKP odd/even reduction");
    for _ in 0..cases {
        let l = if bounds.max_l >= 3 && rng.gen_bool(0.5) { 3 } else { 1 };
        let (a, al) = random_rows(&mut rng, &bounds, l);
        let what = || format!("A={a:?} alpha={al:?}");
        let spec = BkpSpec::new(a.clone(), al.clone()).expect("valid rows");
        match (bkp_coeff_oracle(&spec), bkp_coeff_pf(&spec), bkp_coeff_pf_leading_pad(&spec)) {
            (Ok(o), Ok(t), Ok(lead)) => {
                // A row in front is applied last, as φ_0 on the odd coefficient.
                let phi0 = apply_phi_sum(&[(0, Rational::from_integer(1.into()))], &o);
                rec.check(o == t && phi0.is_ok_and(|p| p == lead), what)
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rec.error(e, what),
        }
    }
    for n in 0..=8 {
        for lambda in StrictPartition::all_of(n) {
            if lambda.len() % 2 == 0 {
                continue;
            }
            let what = || format!("odd expansion of q{:?}", lambda.parts());
            match (q_schur(&lambda, None, 1, 1), q_schur_odd_expansion(&lambda, 1, 1)) {
                (Ok(p), Ok(e)) => rec.check(p == e, what),
                (Err(e), _) | (_, Err(e)) => rec.error(e, what),
            }
        }
    }
    rec.finish()
}

/// Every Schur polynomial up to the given size is a KP tau-function; `t_1²`
/// is not.
pub fn schur_kp_suite(max_size: u32) -> SuiteResult {
    let mut rec = Recorder::new(format!("KP: S_lambda, |lambda| <= {max_size}"));
    for n in 0..=max_size {
        for lambda in Partition::all_of(n) {
            let what = || format!("S{:?}", lambda.parts());
            match jacobi_trudi(&lambda, 1, 1) {
                Ok(f) => rec.verified(verify_kp_with(&kp_vector(0, f), audited()), true, what),
                Err(e) => rec.error(e, what),
            }
        }
    }
    let t1 = Poly::var(1, 1, 1);
    rec.verified(verify_kp_with(&kp_vector(0, t1.pow(2)), audited()), false, || {
        "t1^2 unexpectedly passed".into()
    });
    rec.finish()
}

/// Every `q_λ` with `|λ| ≤ max_size` and at most `max_parts` parts passes the
/// BKP identity, and so does each nonzero multiple.
pub fn q_schur_bkp_suite(max_size: u32, max_parts: usize) -> SuiteResult {
    let mut rec = Recorder::new(format!(
        "BKP: q_lambda, |lambda| <= {max_size}, <= {max_parts} parts"
    ));
    let scales = [Rational::from_integer((-3).into()), Rational::new(2.into(), 5.into())];
    for n in 0..=max_size {
        for lambda in StrictPartition::all_of(n) {
            if lambda.len() > max_parts {
                continue;
            }
            let what = || format!("q{:?}", lambda.parts());
            let q = match q_schur(&lambda, None, 1, 1) {
                Ok(q) => q,
                Err(e) => {
                    rec.error(e, what);
                    continue;
                }
            };
            rec.verified(verify_bkp_with(&q, audited()), true, what);
            let c = &scales[lambda.len() % 2];
            rec.verified(verify_bkp_with(&q.scale(c), audited()), true, || {
                format!("{c} * q{:?}", lambda.parts())
            });
        }
    }
    let bad = &Poly::var(1, 1, 1) + &Poly::var(1, 1, 3);
    rec.verified(verify_bkp_with(&bad, audited()), false, || {
        "p1 + p3 unexpectedly passed".into()
    });
    rec.finish()
}

/// Shifted-Schur determinants with random data pass the KP identity.
pub fn kp_closed_form_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 4);
    let mut rec = Recorder::new("KP closed form with random shifts");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let l = rng.gen_range(1..=3);
        let b: Vec<Rational> = (0..l).map(|_| small_rational(&mut rng)).collect();
        let m = alpha(&mut rng, l, -1, 1);
        let c: Vec<ShiftVector> = (0..l).map(|_| shift(&mut rng)).collect();
        let al = alpha(&mut rng, l, 0, 3);
        let what = || format!("b={b:?} M={m:?} c={c:?} alpha={al:?}");
        match kp_closed_form(&b, &m, &c, &al) {
            Ok(f) if f.is_zero() => {}
            Ok(f) => rec.verified(verify_kp_with(&kp_vector(0, f), audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}

/// χ-Pfaffians with random data pass the BKP identity and agree with the
/// generating-function coefficients of `A_i = b_i exp(Σ c_{i,n} u^n)`.
pub fn bkp_closed_form_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 5);
    let mut rec = Recorder::new("BKP chi closed form with random shifts");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let l = if rng.gen_bool(0.75) { 2 } else { 4 };
        let b: Vec<Rational> = (0..l).map(|_| small_rational(&mut rng)).collect();
        let c: Vec<ShiftVector> = (0..l).map(|_| shift(&mut rng)).collect();
        let al = alpha(&mut rng, l, 0, if l == 2 { 4 } else { 2 });
        let what = || format!("b={b:?} c={c:?} alpha={al:?}");
        let f = match bkp_closed_form_chi(&b, &c, &al) {
            Ok(f) => f,
            Err(e) => {
                rec.error(e, what);
                continue;
            }
        };
        if f.is_zero() {
            continue;
        }
        // Pair coefficients reach row coefficients up to degree |α|.
        let top = al.iter().map(|&a| a.max(0)).sum::<i64>() + 1;
        let rows: Vec<LaurentPoly> = b
            .iter()
            .zip(&c)
            .map(|(bi, ci)| shifted_laurent(bi, 0, ci, top))
            .collect();
        let agrees = BkpSpec::new(rows, al.clone())
            .and_then(|spec| bkp_coeff_pf(&spec))
            .map(|g| g == f)
            .unwrap_or(false);
        if !agrees {
            rec.check(false, || format!("{} disagrees with the Pfaffian of A", what()));
            continue;
        }
        rec.verified(verify_bkp_with(&f, audited()), true, what);
    }
    rec.finish()
}

/// Recurrence against closed form of `ε` on every sequence over
/// `{1..s}` of length at most `max_len`.
pub fn epsilon_suite(s: usize, max_len: usize) -> SuiteResult {
    let mut rec = Recorder::new(format!("epsilon recurrence = closed form, s = {s}, length <= {max_len}"));
    for len in 0..=max_len {
        for seq in std::iter::repeat(1..=s).take(len).multi_cartesian_product() {
            rec.check(epsilon_sign(&seq) == epsilon_closed(&seq), || format!("{seq:?}"));
        }
        if len == 0 {
            rec.check(epsilon_sign(&[]) == 1 && epsilon_closed(&[]) == 1, || "empty".into());
        }
    }
    rec.finish()
}

/// Coefficients of `ψ^{+(a_l)}(u_l)…ψ^{+(a_1)}(u_1)(1)` against
/// `ε(a_l..a_1) z_{a_1}…z_{a_l}` times the product of block determinants,
/// for all assignments and all exponents in `[lo, hi]^l`, `l ≤ max_l`.
pub fn product_expansion_suite(s: usize, max_l: usize, lo: i64, hi: i64) -> SuiteResult {
    let mut rec = Recorder::new(format!(
        "s = {s} fermion products (l <= {max_l}, exponents in [{lo}, {hi}])"
    ));
    fn walk(
        rec: &mut Recorder,
        s: usize,
        max_l: usize,
        range: (i64, i64),
        seq: &mut Vec<(usize, i64)>,
        v: &FockVector,
    ) {
        if !seq.is_empty() {
            let assignment: Vec<usize> = seq.iter().map(|x| x.0).collect();
            let al: Vec<i64> = seq.iter().map(|x| x.1).collect();
            let what = || format!("assignment {assignment:?} alpha {al:?}");
            let rev: Vec<usize> = assignment.iter().rev().copied().collect();
            let eps = Rational::from_integer(epsilon_sign(&rev).into());
            let mut charge = ChargeVector::zero(s);
            for &a in &assignment {
                charge = charge.with_delta(a, 1);
            }
            let expect = SkpSpec::ones(s, al.clone())
                .and_then(|spec| skp_coeff_assignment(&spec, &assignment))
                .and_then(|f| FockVector::sector(charge, f.scale(&eps)));
            match expect {
                Ok(e) => rec.check(&e == v, what),
                Err(err) => rec.error(err, what),
            }
        }
        if seq.len() == max_l {
            return;
        }
        for a in 1..=s {
            for k in range.0..=range.1 {
                let next = psi_mode(Sign::Plus, a, ModeIndex(-k), v).expect("component in range");
                seq.push((a, k));
                walk(rec, s, max_l, range, seq, &next);
                seq.pop();
            }
        }
    }
    walk(&mut rec, s, max_l, (lo, hi), &mut Vec::new(), &FockVector::vacuum(s));
    rec.finish()
}

/// One-component products on `z^k`: the coefficient of `u^α` is
/// `z^{k+l}` times the determinant coefficient at `α - k`.
pub fn charged_vacuum_suite(charges: (i64, i64), max_l: usize, lo: i64, hi: i64) -> SuiteResult {
    let mut rec = Recorder::new(format!(
        "fermion products on z^k, k in [{}, {}], l <= {max_l}",
        charges.0, charges.1
    ));
    for k in charges.0..=charges.1 {
        let start = kp_vector(k, Poly::one(1));
        let mut layer = vec![(Vec::<i64>::new(), start)];
        for l in 1..=max_l {
            let mut next = Vec::new();
            for (al, v) in &layer {
                for x in lo..=hi {
                    let w = psi_mode(Sign::Plus, 1, ModeIndex(-x), v).expect("component 1");
                    let mut al = al.clone();
                    al.push(x);
                    let shifted: Vec<i64> = al.iter().map(|a| a - k).collect();
                    let what = || format!("k={k} alpha={al:?}");
                    let expect = KpSpec::new(vec![LaurentPoly::one(); l], shifted)
                        .and_then(|spec| kp_coeff_det(&spec))
                        .map(|f| if f.is_zero() { FockVector::zero(1) } else { kp_vector(k + l as i64, f) });
                    match expect {
                        Ok(e) => rec.check(e == w, what),
                        Err(err) => rec.error(err, what),
                    }
                    next.push((al, w));
                }
            }
            layer = next;
        }
    }
    rec.finish()
}

fn random_skp_spec(rng: &mut impl Rng, s: usize, max_l: usize, support: i64, alpha_lo: i64, alpha_hi: i64) -> SkpSpec {
    let l = rng.gen_range(1..=max_l);
    let a = (0..s)
        .map(|_| (0..l).map(|_| laurent(rng, -support, support, 2)).collect())
        .collect();
    SkpSpec::new(s, a, alpha(rng, l, alpha_lo, alpha_hi)).expect("valid grid")
}

/// Assignment sums against the signed sector determinants, exhaustively for
/// `A ≡ 1` and on random data.
pub fn assignment_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 6);
    let mut rec = Recorder::new("s = 2 assignment sum = sector determinants");
    let check = |rec: &mut Recorder, spec: &SkpSpec| {
        let what = || format!("{spec:?}");
        match (skp_assignment_sum(spec), skp_coeff_full(spec)) {
            (Ok(x), Ok(y)) => rec.check(x == y, what),
            (Err(e), _) | (_, Err(e)) => rec.error(e, what),
        }
    };
    for l in 1..=3 {
        for al in std::iter::repeat(-1..=3i64).take(l).multi_cartesian_product() {
            check(&mut rec, &SkpSpec::ones(2, al).expect("valid"));
        }
    }
    for _ in 0..cases {
        let spec = random_skp_spec(&mut rng, 2, 3, 2, -1, 3);
        check(&mut rec, &spec);
    }
    rec.finish()
}

/// Nonzero outputs of the sector-determinant constructor pass the
/// s-component identity.
pub fn skp_construction_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 7);
    let mut rec = Recorder::new("s = 2 constructor outputs pass");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let spec = random_skp_spec(&mut rng, 2, 3, 1, 0, 2);
        let what = || format!("{spec:?}");
        match skp_coeff_full(&spec) {
            Ok(tau) if tau.is_zero() => {}
            Ok(tau) => rec.verified(verify_skp_with(&tau, audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}

fn random_kp_tau(rng: &mut impl Rng) -> Poly {
    loop {
        let n = rng.gen_range(0..=4);
        let parts = Partition::all_of(n);
        let lambda = parts.choose(rng).expect("partitions exist");
        let base = jacobi_trudi(lambda, 1, 1).expect("valid");
        if rng.gen_bool(0.5) {
            return base.scale(&small_rational(rng));
        }
        let l = rng.gen_range(1..=2);
        let b: Vec<Rational> = (0..l).map(|_| small_rational(rng)).collect();
        let m = vec![0; l];
        let c: Vec<ShiftVector> = (0..l).map(|_| shift(rng)).collect();
        let al = alpha(rng, l, 0, 2);
        let f = kp_closed_form(&b, &m, &c, &al).expect("valid");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Products of one-component tau-functions in separate components.
pub fn product_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 8);
    let mut rec = Recorder::new("s = 2 products of KP tau-functions");
    for _ in 0..cases {
        let f = random_kp_tau(&mut rng);
        let g = random_kp_tau(&mut rng);
        let m = ChargeVector(alpha(&mut rng, 2, -2, 2));
        let poly = &f.lift(2).expect("lift") * &g.shift_components(1, 2);
        let what = || format!("z^{m:?} ({f:?}) ({g:?})");
        let tau = FockVector::sector(m.clone(), poly).expect("sector");
        rec.verified(verify_skp_with(&tau, audited()), true, what);
    }
    rec.finish()
}

/// The sign exponent `Σ_{i≥2} a_i (m_1 + ... + m_{i-1})` of a translation.
pub fn translation_sign(shift: &ChargeVector, m: &ChargeVector) -> i64 {
    (2..=m.len()).map(|i| shift.get(i) * m.prefix_sum(i)).sum()
}

/// Signed translations of passing s-component tau-functions pass.
pub fn translation_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 9);
    let mut rec = Recorder::new("s = 2 signed charge translations");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let spec = random_skp_spec(&mut rng, 2, 2, 1, 0, 2);
        let tau = match skp_coeff_full(&spec) {
            Ok(t) if !t.is_zero() => t,
            _ => continue,
        };
        let a = ChargeVector(alpha(&mut rng, 2, -2, 2));
        let what = || format!("shift {a:?} of {spec:?}");
        match tau.translate(&a, |m| translation_sign(&a, m)) {
            Ok(moved) => rec.verified(verify_skp_with(&moved, audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}

fn random_terms(rng: &mut impl Rng, lo: i64, hi: i64) -> Vec<(i64, Rational)> {
    let modes: Vec<i64> = (lo..=hi).collect();
    let n = rng.gen_range(1..=3);
    modes
        .choose_multiple(rng, n)
        .map(|&k| (k, small_rational(rng)))
        .collect()
}

/// `X τ` for random finite `X = Σ A_n ψ^+[n]` and passing `τ`.
pub fn kp_closure_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 10);
    let mut rec = Recorder::new("KP closure under mode sums");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let tau = kp_vector(rng.gen_range(-1..=1), random_kp_tau(&mut rng));
        let terms: Vec<(ModeIndex, Rational)> = random_terms(&mut rng, -3, 3)
            .into_iter()
            .map(|(n, c)| (ModeIndex(n), c))
            .collect();
        let what = || format!("X={terms:?} tau={tau:?}");
        match apply_psi_sum(Sign::Plus, 1, &terms, &tau) {
            Ok(x) if x.is_zero() => {}
            Ok(x) => rec.verified(verify_kp_with(&x, audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}

/// `X τ` for random finite `X = Σ A_n φ_n` and `τ = c q_λ`.
pub fn bkp_closure_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 11);
    let mut rec = Recorder::new("BKP closure under mode sums");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let n = rng.gen_range(0..=5);
        let all = StrictPartition::all_of(n);
        let lambda = all.choose(&mut rng).expect("strict partitions exist");
        let tau = q_schur(lambda, None, 1, 1)
            .expect("valid")
            .scale(&small_rational(&mut rng));
        let terms = random_terms(&mut rng, -3, 3);
        let what = || format!("X={terms:?} lambda={:?}", lambda.parts());
        match apply_phi_sum(&terms, &tau) {
            Ok(x) if x.is_zero() => {}
            Ok(x) => rec.verified(verify_bkp_with(&x, audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}

/// `X τ` for random finite `X = Σ_a Σ A^{(a)}_n ψ^{+(a)}[n]` and passing
/// s-component `τ`.
pub fn skp_closure_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 12);
    let mut rec = Recorder::new("s = 2 closure under mode sums");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let spec = random_skp_spec(&mut rng, 2, 2, 1, 0, 2);
        let tau = match skp_coeff_full(&spec) {
            Ok(t) if !t.is_zero() => t,
            _ => continue,
        };
        let terms: Vec<Vec<(ModeIndex, Rational)>> = (0..2)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    Vec::new()
                } else {
                    random_terms(&mut rng, -2, 2)
                        .into_iter()
                        .map(|(n, c)| (ModeIndex(n), c))
                        .collect()
                }
            })
            .collect();
        let what = || format!("X={terms:?} tau={spec:?}");
        let mut x = FockVector::zero(2);
        let mut failed = None;
        for (idx, t) in terms.iter().enumerate() {
            match apply_psi_sum(Sign::Plus, idx + 1, t, &tau).and_then(|w| x.add(&w)) {
                Ok(sum) => x = sum,
                Err(e) => failed = Some(e),
            }
        }
        match failed {
            Some(e) => rec.error(e, what),
            None if x.is_zero() => {}
            None => rec.verified(verify_skp_with(&x, audited()), true, what),
        }
    }
    rec.finish()
}

/// λ = (2,1) tau-functions with small `N`, random `b` and shifts pass the
/// λ-KdV checks with `j_max = 2`.
pub fn lkdv_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed, 13);
    let lambda = Partition::new(vec![2, 1]).expect("partition");
    let mut rec = Recorder::new("lambda = (2,1) tau-functions pass");
    let mut attempts = 0;
    while rec.0.cases < cases && attempts < cases * ATTEMPTS_PER_CASE {
        attempts += 1;
        let n = vec![vec![rng.gen_range(0..=3), rng.gen_range(0..=2)]];
        let b = vec![(0..2).map(|_| small_rational(&mut rng)).collect()];
        let c = vec![(0..2).map(|_| shift(&mut rng)).collect()];
        let spec = match LkdvSpec::new(lambda.clone(), n, b, c, None) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let what = || format!("{spec:?}");
        match lkdv_tau(&spec) {
            Ok(t) if t.is_zero() => {}
            Ok(t) => rec.verified(verify_lkdv_with(&t, &lambda, 2, audited()), true, what),
            Err(e) => rec.error(e, what),
        }
    }
    rec.finish()
}
