//! Constructors for polynomial tau-functions: determinant coefficients (KP),
//! Pfaffian coefficients (BKP), charge-sector determinant sums (s-component
//! KP) and the λ-KdV reduction, together with fermionic-operator oracles.

mod bkp;
mod kp;
mod lkdv;
mod skp;

pub use bkp::{
    bkp_closed_form_chi, bkp_coeff_oracle, bkp_coeff_pf, bkp_coeff_pf_leading_pad,
    bkp_pair_coeff, chi, BkpSpec,
};
pub use kp::{kp_closed_form, kp_coeff_det, kp_coeff_oracle, series_coeff_t, KpSpec};
pub use lkdv::{lkdv_k_lengths, lkdv_sector_data, lkdv_tau, LkdvSpec};
pub use skp::{
    charge_sectors, epsilon_closed, epsilon_sign, skp_assignment_sum, skp_closed_form,
    skp_coeff_assignment, skp_coeff_full, skp_sector_det, step_function, SkpClosedData, SkpSpec,
    StepKind,
};

use num_traits::Zero;

use crate::algebra::{LaurentPoly, Poly, Rational};
use crate::symfun::{cached_series, SeriesKind, ShiftVector};

/// Coefficient `[u^k] A(u) F(u)` where `F` is the H or Q series of a component.
pub(crate) fn series_coeff(kind: SeriesKind, a: &LaurentPoly, s: usize, comp: usize, k: i64) -> Poly {
    let mut acc = Poly::zero(s);
    let Some(lo) = a.min_power() else {
        return acc;
    };
    let top = k - lo;
    if top < 0 {
        return acc;
    }
    let table = cached_series(kind, s, comp, top as usize);
    for (j, c) in a.iter() {
        let r = k - j;
        if r >= 0 {
            acc.add_scaled(&table[r as usize], c);
        }
    }
    acc
}

/// `b u^M Σ_{k=0..top} S_k(c) u^k`: the truncation of `b u^M exp(Σ c_n u^n)`
/// that is exact for every coefficient of power at most `M + top`.
pub fn shifted_laurent(b: &Rational, m: i64, c: &ShiftVector, top: i64) -> LaurentPoly {
    if top < 0 || b.is_zero() {
        return LaurentPoly::zero();
    }
    let vals = c.schur_values(top as usize);
    LaurentPoly::from_coeffs(
        vals.into_iter()
            .enumerate()
            .map(|(k, v)| (m + k as i64, v * b)),
    )
}
