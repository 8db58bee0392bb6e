//! `Ω(τ⊗τ)` residuals.
//!
//! The charged operator for offsets `d_a` is
//! `Σ_a Σ_n ψ^{+(a)}[n] ⊗ ψ^{-(a)}[d_a + 1 - n]`; `d = 0` gives the KP and
//! s-component identities and `d_a = j λ_a` the λ-KdV ones. The sum is cut to
//! `n ∈ [d_a + 1 - minus_hi, plus_hi]` outside of which one of the factors
//! vanishes.

use num_traits::One;
use rayon::prelude::*;

use super::{Extra, Identity, ModeRange, VerificationReport};
use crate::algebra::{Partition, Poly, Rational};
use crate::error::{Error, Result};
use crate::fock::{
    mode_support_bounds, phi_support_bound, ChargeVector, FockVector, ModeIndex, PhiPlan, PsiPlan,
    Sign, TensorFockVector,
};

/// How far the summation ranges are widened beyond the support bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub margin: i64,
    /// Recompute with the ranges widened by [`EXTENSION`] and record whether
    /// the residual changed as the extra `range_extension`.
    pub check_extension: bool,
}

/// Widening used by the range-extension audit.
pub const EXTENSION: i64 = 5;

impl VerifyOptions {
    pub fn audited() -> Self {
        VerifyOptions {
            margin: 0,
            check_extension: true,
        }
    }

    fn widened(self) -> Self {
        VerifyOptions {
            margin: self.margin + EXTENSION,
            check_extension: false,
        }
    }
}

fn check_vector(tau: &FockVector) -> Result<()> {
    if tau.is_zero() {
        return Err(Error::invalid("cannot verify the zero vector"));
    }
    if tau.total_charge()?.is_none() {
        return Err(Error::invalid("vector has no charge sectors"));
    }
    Ok(())
}

/// `Σ_a Σ_n ψ^{+(a)}[n] τ ⊗ ψ^{-(a)}[d_a + 1 - n] τ` and the ranges used.
pub fn omega_residual(
    tau: &FockVector,
    offsets: &[i64],
    margin: i64,
) -> Result<(TensorFockVector, Vec<ModeRange>)> {
    if offsets.len() != tau.s() {
        return Err(Error::invalid(format!(
            "{} offsets for {} components",
            offsets.len(),
            tau.s()
        )));
    }
    let mut total = TensorFockVector::zero(tau.s());
    let mut ranges = Vec::with_capacity(tau.s());
    for (idx, &d) in offsets.iter().enumerate() {
        let a = idx + 1;
        let Some(bounds) = mode_support_bounds(tau, a)? else {
            continue;
        };
        let lo = d + 1 - bounds.minus_hi - margin;
        let hi = bounds.plus_hi + margin;
        ranges.push(ModeRange {
            operator: "psi+ (x) psi-".into(),
            component: a,
            lo,
            hi,
        });
        if lo > hi {
            continue;
        }
        let plus = PsiPlan::new(Sign::Plus, a, tau)?;
        let minus = PsiPlan::new(Sign::Minus, a, tau)?;
        let parts: Vec<TensorFockVector> = (lo..=hi)
            .into_par_iter()
            .map(|n| {
                let mut t = TensorFockVector::zero(tau.s());
                let left = plus.apply(ModeIndex(n));
                if !left.is_zero() {
                    let right = minus.apply(ModeIndex(d + 1 - n));
                    t.add_product(&left, &right, &Rational::one())?;
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        for t in parts {
            total = total.merge(t);
        }
    }
    Ok((total, ranges))
}

fn charged_report(
    identity: Identity,
    tau: &FockVector,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    check_vector(tau)?;
    let zeros = vec![0; tau.s()];
    let (residual, ranges) = omega_residual(tau, &zeros, opts.margin)?;
    let mut extras = Vec::new();
    if opts.check_extension {
        let (wide, _) = omega_residual(tau, &zeros, opts.widened().margin)?;
        extras.push(Extra::new("range_extension", wide == residual));
    }
    Ok(VerificationReport::new(identity, residual, extras, ranges))
}

/// KP identity for a one-component, charge-homogeneous vector.
pub fn verify_kp(tau: &FockVector) -> Result<VerificationReport> {
    verify_kp_with(tau, VerifyOptions::default())
}

pub fn verify_kp_with(tau: &FockVector, opts: VerifyOptions) -> Result<VerificationReport> {
    if tau.s() != 1 {
        return Err(Error::invalid(format!("KP needs s = 1, got s = {}", tau.s())));
    }
    charged_report(Identity::Kp, tau, opts)
}

/// s-component KP identity.
pub fn verify_skp(tau: &FockVector) -> Result<VerificationReport> {
    verify_skp_with(tau, VerifyOptions::default())
}

pub fn verify_skp_with(tau: &FockVector, opts: VerifyOptions) -> Result<VerificationReport> {
    charged_report(Identity::Skp, tau, opts)
}

fn bkp_residual(tau: &Poly, plan: &PhiPlan, d: i64, margin: i64) -> TensorFockVector {
    let empty = ChargeVector::default();
    let range: Vec<i64> = (-d - margin..=d + margin).collect();
    let parts: Vec<TensorFockVector> = range
        .into_par_iter()
        .map(|n| {
            let mut t = TensorFockVector::zero(1);
            let left = plan.apply(n);
            if !left.is_zero() {
                let right = plan.apply(-n);
                let c = if n.rem_euclid(2) == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                t.add_poly_product(&empty, &left, &empty, &right, &c);
            }
            t
        })
        .collect();
    let mut total = TensorFockVector::zero(1);
    for t in parts {
        total = total.merge(t);
    }
    total.add_poly_product(&empty, tau, &empty, tau, &-Rational::one());
    total
}

/// BKP identity `Σ_n (-1)^n φ_n τ ⊗ φ_{-n} τ = τ ⊗ τ` on the odd ring.
pub fn verify_bkp(tau: &Poly) -> Result<VerificationReport> {
    verify_bkp_with(tau, VerifyOptions::default())
}

pub fn verify_bkp_with(tau: &Poly, opts: VerifyOptions) -> Result<VerificationReport> {
    if tau.is_zero() {
        return Err(Error::invalid("cannot verify the zero polynomial"));
    }
    if tau.s() != 1 {
        return Err(Error::invalid(format!("BKP needs s = 1, got s = {}", tau.s())));
    }
    let plan = PhiPlan::new(tau)?;
    let d = phi_support_bound(tau).unwrap_or(0);
    let residual = bkp_residual(tau, &plan, d, opts.margin);
    let mut extras = Vec::new();
    if opts.check_extension {
        let wide = bkp_residual(tau, &plan, d, opts.widened().margin);
        extras.push(Extra::new("range_extension", wide == residual));
    }
    let ranges = vec![ModeRange {
        operator: "phi (x) phi".into(),
        component: 1,
        lo: -d - opts.margin,
        hi: d + opts.margin,
    }];
    Ok(VerificationReport::new(Identity::Bkp, residual, extras, ranges))
}

/// `Σ_a jλ_a ∂τ/∂p^{(a)}_{jλ_a}` sector by sector.
fn derivative_constraint(tau: &FockVector, lambda: &Partition, j: i64) -> Vec<(ChargeVector, Poly)> {
    let mut bad = Vec::new();
    for (m, f) in tau.sectors() {
        let mut acc = Poly::zero(tau.s());
        for (idx, &lam) in lambda.parts().iter().enumerate() {
            let n = (j as u32) * lam;
            let w = Rational::from_integer(n.into());
            acc.add_scaled(&f.partial(idx + 1, n), &w);
        }
        if !acc.is_zero() {
            bad.push((m.clone(), acc));
        }
    }
    bad
}

/// λ-KdV: the s-component identity, `Ω_j(τ⊗τ) = 0` for `1 ≤ j ≤ j_max`, and
/// the derivative constraints `Σ_a ∂τ/∂t^{(a)}_{jλ_a} = 0`.
///
/// The residual is that of the first failing `Ω_j` (`j = 0` being the
/// s-component identity); every `j` is listed among the extras.
pub fn verify_lkdv(tau: &FockVector, lambda: &Partition, j_max: u32) -> Result<VerificationReport> {
    verify_lkdv_with(tau, lambda, j_max, VerifyOptions::default())
}

pub fn verify_lkdv_with(
    tau: &FockVector,
    lambda: &Partition,
    j_max: u32,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    check_vector(tau)?;
    if lambda.len() != tau.s() || lambda.parts().contains(&0) {
        return Err(Error::invalid(format!(
            "λ must have {} positive parts, got {:?}",
            tau.s(),
            lambda.parts()
        )));
    }
    let mut residual = TensorFockVector::zero(tau.s());
    let mut extras = Vec::new();
    let mut ranges = Vec::new();
    let mut extension_ok = true;
    for j in 0..=j_max as i64 {
        let offsets: Vec<i64> = lambda.parts().iter().map(|&x| j * x as i64).collect();
        let (res, used) = omega_residual(tau, &offsets, opts.margin)?;
        if opts.check_extension {
            let (wide, _) = omega_residual(tau, &offsets, opts.widened().margin)?;
            extension_ok &= wide == res;
        }
        for mut r in used {
            r.operator = format!("omega_{j}: {}", r.operator);
            ranges.push(r);
        }
        let ok = res.is_zero();
        let mut e = Extra::new(format!("omega_{j}"), ok);
        if !ok {
            e = e.with_detail(format!("{} nonzero tensor sectors", res.num_sectors()));
            if residual.is_zero() {
                residual = res;
            }
        }
        extras.push(e);
    }
    for j in 1..=j_max as i64 {
        let bad = derivative_constraint(tau, lambda, j);
        let mut e = Extra::new(format!("derivative_{j}"), bad.is_empty());
        if !bad.is_empty() {
            let sectors: Vec<String> = bad.iter().map(|(m, _)| format!("{m:?}")).collect();
            e = e.with_detail(format!("nonzero in sectors {}", sectors.join(" ")));
        }
        extras.push(e);
    }
    if opts.check_extension {
        extras.push(Extra::new("range_extension", extension_ok));
    }
    Ok(VerificationReport::new(Identity::Lkdv, residual, extras, ranges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::StrictPartition;
    use crate::symfun::{jacobi_trudi, q_schur};

    fn t(n: u32) -> Poly {
        Poly::var(1, 1, n).scale(&rat(1, n as i64))
    }

    fn kp(f: Poly) -> FockVector {
        FockVector::sector(ChargeVector(vec![0]), f).unwrap()
    }

    #[test]
    fn kp_examples() {
        assert!(verify_kp(&FockVector::vacuum(1)).unwrap().passed);
        let s21 = t(1).pow(3).scale(&rat(1, 3)) - t(3);
        let r = verify_kp_with(&kp(s21), VerifyOptions::audited()).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        let r = verify_kp(&kp(t(1).pow(2))).unwrap();
        assert!(!r.passed);
        assert!(!r.residual.is_zero());
        assert!(verify_kp(&FockVector::zero(1)).is_err());
        let mixed = kp(Poly::one(1)).add(&FockVector::sector(ChargeVector(vec![1]), Poly::one(1)).unwrap());
        assert!(verify_kp(&mixed.unwrap()).is_err());
    }

    #[test]
    fn kp_charge_transport() {
        let s = jacobi_trudi(&Partition::new(vec![2, 2]).unwrap(), 1, 1).unwrap();
        for m in [-2, 3] {
            let v = FockVector::sector(ChargeVector(vec![m]), s.clone()).unwrap();
            assert!(verify_kp(&v).unwrap().passed);
        }
    }

    #[test]
    fn bkp_examples() {
        assert!(verify_bkp(&Poly::one(1)).unwrap().passed);
        let q1 = Poly::var(1, 1, 1).scale(&int(2));
        assert!(verify_bkp_with(&q1, VerifyOptions::audited()).unwrap().passed);
        let q321 = q_schur(&StrictPartition::new(vec![3, 2, 1]).unwrap(), None, 1, 1).unwrap();
        assert!(verify_bkp(&q321).unwrap().passed);
        assert!(!verify_bkp(&(Poly::one(1) + q321)).unwrap().passed);
        assert!(verify_bkp(&Poly::var(1, 1, 2)).is_err());
        assert!(verify_bkp(&q1.scale(&rat(-3, 7))).unwrap().passed);
    }

    #[test]
    fn skp_examples() {
        let s = |m: Vec<i64>, f: Poly| FockVector::sector(ChargeVector(m), f).unwrap();
        let one = Poly::one(2);
        let v = s(vec![1, 0], one.clone()).add(&s(vec![0, 1], one.clone())).unwrap();
        assert!(verify_skp(&v).unwrap().passed);
        let w = s(vec![2, 0], one.clone())
            .add(&s(vec![1, 1], Poly::var(2, 1, 1) - Poly::var(2, 2, 1)))
            .unwrap()
            .add(&s(vec![0, 2], one))
            .unwrap();
        assert!(verify_skp_with(&w, VerifyOptions::audited()).unwrap().passed);
        let bad = s(vec![1, 1], Poly::var(2, 1, 1).pow(2));
        assert!(!verify_skp(&bad).unwrap().passed);
    }

    #[test]
    fn lkdv_examples() {
        let lam = Partition::new(vec![2]).unwrap();
        let tau = kp(t(3) - t(1).pow(3).scale(&rat(1, 3)));
        let r = verify_lkdv_with(&tau, &lam, 2, VerifyOptions::audited()).unwrap();
        assert!(r.passed, "{:?}", r.extras);
        let s2 = kp(t(1).pow(2).scale(&rat(1, 2)) + t(2));
        let r = verify_lkdv(&s2, &lam, 2).unwrap();
        assert!(!r.passed);
        assert!(r.extra("omega_0").unwrap().passed);
        assert!(!r.extra("derivative_1").unwrap().passed);
        let r = verify_lkdv(&tau, &lam, 0).unwrap();
        assert!(r.passed && r.extras.len() == 1);
    }
}
