//! Property tests for the exact algebra, the fermion actions and the
//! constructors.

use proptest::prelude::*;

use tauforge::algebra::rational::{int, rat};
use tauforge::algebra::{LaurentPoly, Monomial, Partition, Poly, PolyMatrix, Rational, StrictPartition, Var};
use tauforge::fock::{apply_phi_sum, psi_mode, ChargeVector, FockVector, ModeIndex, Sign};
use tauforge::render::{parse_fock, parse_poly, render_fock, render_poly};
use tauforge::serial::Basis;
use tauforge::symfun::{jacobi_trudi, q_schur};
use tauforge::taugen::{bkp_coeff_oracle, bkp_coeff_pf, kp_coeff_det, kp_coeff_oracle, BkpSpec, KpSpec};
use tauforge::verify::{verify_bkp, verify_kp};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != int(0))
}

/// Polynomials in `s` components over `p_1..p_3`, up to five terms.
fn poly(s: usize) -> impl Strategy<Value = Poly> {
    let factor = (1..=s, 1u32..=3, 1u32..=2);
    let mono = prop::collection::vec(factor, 0..3)
        .prop_map(|fs| Monomial::from_factors(fs.into_iter().map(|(a, n, e)| (Var::new(a, n), e))));
    prop::collection::vec((mono, rational()), 0..5).prop_map(move |terms| Poly::from_terms(s, terms))
}

/// Polynomials in the odd variables `p_1, p_3`.
fn odd_poly() -> impl Strategy<Value = Poly> {
    let mono = prop::collection::vec((prop::sample::select(vec![1u32, 3]), 1u32..=2), 0..3)
        .prop_map(|fs| Monomial::from_factors(fs.into_iter().map(|(n, e)| (Var::new(1, n), e))));
    prop::collection::vec((mono, rational()), 0..4).prop_map(|terms| Poly::from_terms(1, terms))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::btree_map(-3i64..=3, nonzero_rational(), 1..3).prop_map(LaurentPoly::from_coeffs)
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Poly>>> {
    prop::collection::vec(prop::collection::vec(poly(1), n), n)
}

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<Poly>>> {
    prop::collection::vec(poly(1), n * (n - 1) / 2).prop_map(move |upper| {
        let mut rows = vec![vec![Poly::zero(1); n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                rows[j][i] = -&v;
                rows[i][j] = v;
            }
        }
        rows
    })
}

fn strict_partition() -> impl Strategy<Value = StrictPartition> {
    prop::collection::btree_set(1u32..=5, 0..=3)
        .prop_map(|set| StrictPartition::new(set.into_iter().rev().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(f in poly(2), g in poly(2), h in poly(2)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(f in poly(2), g in poly(2), h in poly(2)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &Poly::one(2), f.clone());
    }

    #[test]
    fn derivative_obeys_leibniz(f in poly(2), g in poly(2), a in 1usize..=2, n in 1u32..=3) {
        let lhs = (&f * &g).partial(a, n);
        let rhs = &(&f.partial(a, n) * &g) + &(&f * &g.partial(a, n));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(1), g in poly(1)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly(2), g in poly(2), xs in prop::collection::vec(rational(), 6)) {
        let at = |v: Var| xs[(v.component() - 1) * 3 + v.index() as usize - 1].clone();
        prop_assert_eq!((&f * &g).evaluate(at), f.evaluate(at) * g.evaluate(at));
        prop_assert_eq!((&f + &g).evaluate(at), f.evaluate(at) + g.evaluate(at));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(rows in (1usize..=4).prop_flat_map(square)) {
        let m = PolyMatrix::from_rows(1, rows).unwrap();
        prop_assert_eq!(m.det_bareiss().unwrap(), m.det_laplace().unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(rows in prop_oneof![skew(2), skew(4)]) {
        let m = PolyMatrix::from_rows(1, rows).unwrap();
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.det().unwrap());
    }

    #[test]
    fn json_round_trip(f in poly(2)) {
        let text = serde_json::to_string(&f).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rendering_round_trips_in_both_bases(f in poly(1), g in poly(2)) {
        for basis in [Basis::T, Basis::P] {
            prop_assert_eq!(parse_poly(&render_poly(&f, basis), 1).unwrap(), f.clone());
            prop_assert_eq!(parse_poly(&render_poly(&g, basis), 2).unwrap(), g.clone());
        }
    }

    #[test]
    fn fock_vectors_round_trip(f in poly(2), g in poly(2), m in -2i64..=2) {
        let v = FockVector::from_sectors(
            2,
            [(ChargeVector(vec![m, 1 - m]), f), (ChargeVector(vec![m + 1, -m]), g)],
        )
        .unwrap();
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<FockVector>(&json).unwrap(), v.clone());
        prop_assert_eq!(parse_fock(&render_fock(&v, Basis::P), 2).unwrap(), v);
    }

    #[test]
    fn charged_fermions_anticommute(f in poly(1), m in -2i64..=3, n in -2i64..=3, charge in -1i64..=1) {
        let v = FockVector::sector(ChargeVector(vec![charge]), f).unwrap();
        let pm = psi_mode(Sign::Plus, 1, ModeIndex(m), &psi_mode(Sign::Minus, 1, ModeIndex(n), &v).unwrap()).unwrap();
        let mp = psi_mode(Sign::Minus, 1, ModeIndex(n), &psi_mode(Sign::Plus, 1, ModeIndex(m), &v).unwrap()).unwrap();
        let sum = pm.add(&mp).unwrap();
        let expect = if m + n == 1 { v } else { FockVector::zero(1) };
        prop_assert_eq!(sum, expect);
    }

    #[test]
    fn neutral_fermions_anticommute(f in odd_poly(), m in -3i64..=3, n in -3i64..=3) {
        let one = int(1);
        let mn = apply_phi_sum(&[(m, one.clone())], &apply_phi_sum(&[(n, one.clone())], &f).unwrap()).unwrap();
        let nm = apply_phi_sum(&[(n, one.clone())], &apply_phi_sum(&[(m, one)], &f).unwrap()).unwrap();
        let expect = if m + n == 0 {
            f.scale(&int(if m % 2 == 0 { 2 } else { -2 }))
        } else {
            Poly::zero(1)
        };
        prop_assert_eq!(&mn + &nm, expect);
    }

    #[test]
    fn schur_polynomials_are_homogeneous_kp_taus(parts in prop::collection::vec(1u32..=3, 0..=3)) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        let s = jacobi_trudi(&lambda, 1, 1).unwrap();
        prop_assert!(s.is_homogeneous_of(lambda.size()));
        let v = FockVector::sector(ChargeVector(vec![0]), s).unwrap();
        prop_assert!(verify_kp(&v).unwrap().passed);
    }

    #[test]
    fn bkp_is_invariant_under_scaling(lambda in strict_partition(), c in nonzero_rational()) {
        let q = q_schur(&lambda, None, 1, 1).unwrap();
        prop_assert!(verify_bkp(&q.scale(&c)).unwrap().passed);
    }

    #[test]
    fn kp_determinant_equals_fermionic_oracle(
        rows in prop::collection::vec(laurent(), 1..=3),
        alpha in prop::collection::vec(-1i64..=3, 3),
    ) {
        let alpha = alpha[..rows.len()].to_vec();
        let spec = KpSpec::new(rows, alpha).unwrap();
        prop_assert_eq!(kp_coeff_det(&spec).unwrap(), kp_coeff_oracle(&spec).unwrap());
    }

    #[test]
    fn bkp_pfaffian_equals_neutral_oracle(
        rows in prop::collection::vec(laurent(), 1..=3),
        alpha in prop::collection::vec(-1i64..=3, 3),
    ) {
        let alpha = alpha[..rows.len()].to_vec();
        let spec = BkpSpec::new(rows, alpha).unwrap();
        prop_assert_eq!(bkp_coeff_pf(&spec).unwrap(), bkp_coeff_oracle(&spec).unwrap());
    }

    #[test]
    fn kp_coefficients_are_multilinear_in_rows(
        rows in prop::collection::vec(laurent(), 2),
        alpha in prop::collection::vec(0i64..=3, 2),
        c in nonzero_rational(),
    ) {
        let base = kp_coeff_det(&KpSpec::new(rows.clone(), alpha.clone()).unwrap()).unwrap();
        let mut scaled = rows;
        scaled[0] = scaled[0].scale(&c);
        let spec = KpSpec::new(scaled, alpha).unwrap();
        prop_assert_eq!(kp_coeff_det(&spec).unwrap(), base.scale(&c));
    }
}
