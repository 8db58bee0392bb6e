//! Schur Q-polynomials as Pfaffians of pair values.

use num_traits::One;

use super::{cached_series, check_component, shift_series, SeriesKind, ShiftVector};
use crate::algebra::{Poly, PolyMatrix, Rational, StrictPartition};
use crate::error::Result;

/// `x_a y_b + 2 Σ_{i≥1} (-1)^i x_{a+i} y_{b-i}` for coefficient accessors
/// `x`, `y` that vanish at negative indices.
fn pair_sum(a: i64, b: i64, x: impl Fn(i64) -> Poly, y: impl Fn(i64) -> Poly, s: usize) -> Poly {
    let mut acc = Poly::zero(s);
    acc.add_product(&x(a), &y(b), &Rational::one());
    let two = Rational::from_integer(2.into());
    for i in 1..=b.max(0) {
        let sign = if i % 2 == 0 { two.clone() } else { -two.clone() };
        acc.add_product(&x(a + i), &y(b - i), &sign);
    }
    acc
}

/// `q_{a,b}`: for `a > b` the pair sum above with `x = y = q`, extended
/// antisymmetrically, and zero on the diagonal.
pub fn q_pair(a: u32, b: u32, s: usize, comp: usize) -> Result<Poly> {
    check_component(s, comp)?;
    if a == b {
        return Ok(Poly::zero(s));
    }
    if a < b {
        return Ok(-q_pair(b, a, s, comp)?);
    }
    let q = cached_series(SeriesKind::Q, s, comp, (a + b) as usize);
    let at = |k: i64| {
        if k < 0 {
            Poly::zero(s)
        } else {
            q[k as usize].clone()
        }
    };
    Ok(pair_sum(a as i64, b as i64, at, at, s))
}

/// Pair value built from two shifted Q-series, `x = S(t~ + c_x)` and
/// `y = S(t~ + c_y)`. With both shifts zero and `a > b` this is `q_{a,b}`.
pub fn shifted_q_pair(
    a: u32,
    b: u32,
    cx: &ShiftVector,
    cy: &ShiftVector,
    s: usize,
    comp: usize,
) -> Result<Poly> {
    check_component(s, comp)?;
    let q = cached_series(SeriesKind::Q, s, comp, (a + b) as usize);
    let x = |k: i64| shift_series(&q, cx, k, s);
    let y = |k: i64| shift_series(&q, cy, k, s);
    Ok(pair_sum(a as i64, b as i64, x, y, s))
}

/// Schur Q-polynomial `q_λ`, or its shifted variant when every row carries its
/// own shift vector.
///
/// Odd-length partitions are padded with a trailing zero part (unshifted),
/// which agrees with the alternating expansion in
/// [`q_schur_odd_expansion`].
pub fn q_schur(
    lambda: &StrictPartition,
    shifts: Option<&[ShiftVector]>,
    s: usize,
    comp: usize,
) -> Result<Poly> {
    check_component(s, comp)?;
    let mut parts: Vec<u32> = lambda.parts().to_vec();
    let zero = ShiftVector::zero();
    let mut rows: Vec<&ShiftVector> = match shifts {
        Some(list) => {
            if list.len() != parts.len() {
                return Err(crate::Error::invalid(format!(
                    "{} shift vectors for {} parts",
                    list.len(),
                    parts.len()
                )));
            }
            list.iter().collect()
        }
        None => vec![&zero; parts.len()],
    };
    if parts.len() % 2 == 1 {
        parts.push(0);
        rows.push(&zero);
    }
    let n = parts.len();
    let mut entries = vec![vec![Poly::zero(s); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = if shifts.is_none() {
                q_pair(parts[i], parts[j], s, comp)?
            } else {
                shifted_q_pair(parts[i], parts[j], rows[i], rows[j], s, comp)?
            };
            entries[j][i] = -&v;
            entries[i][j] = v;
        }
    }
    PolyMatrix::from_rows(s, entries)?.pfaffian()
}

/// Odd-length expansion `Σ_k (-1)^(k-1) q_{λ_k} q_{λ without λ_k}`.
pub fn q_schur_odd_expansion(lambda: &StrictPartition, s: usize, comp: usize) -> Result<Poly> {
    check_component(s, comp)?;
    let parts = lambda.parts();
    assert!(parts.len() % 2 == 1, "expansion applies to odd length only");
    let top = parts.first().copied().unwrap_or(0) as usize;
    let q = cached_series(SeriesKind::Q, s, comp, top);
    let mut acc = Poly::zero(s);
    for k in 0..parts.len() {
        let rest: Vec<u32> = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &x)| x)
            .collect();
        let sub = q_schur(&StrictPartition::new(rest)?, None, s, comp)?;
        let sign = if k % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        acc.add_product(&q[parts[k] as usize], &sub, &sign);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn t(n: u32) -> Poly {
        Poly::var(1, 1, n).scale(&rat(1, n as i64))
    }

    #[test]
    fn pair_examples() {
        assert_eq!(q_pair(1, 0, 1, 1).unwrap(), t(1).scale(&int(2)));
        let expect = &t(1).pow(3).scale(&rat(4, 3)) - &t(3).scale(&int(4));
        assert_eq!(q_pair(2, 1, 1, 1).unwrap(), expect);
        assert!(q_pair(2, 2, 1, 1).unwrap().is_zero());
        assert_eq!(q_pair(1, 2, 1, 1).unwrap(), -expect);
    }

    #[test]
    fn schur_q_examples() {
        let one = StrictPartition::new(vec![1]).unwrap();
        assert_eq!(q_schur(&one, None, 1, 1).unwrap(), t(1).scale(&int(2)));
        let two_one = StrictPartition::new(vec![2, 1]).unwrap();
        assert_eq!(
            q_schur(&two_one, None, 1, 1).unwrap(),
            &t(1).pow(3).scale(&rat(4, 3)) - &t(3).scale(&int(4))
        );
        for k in 1..6 {
            let padded = StrictPartition::new(vec![k, 0]).unwrap();
            let q = cached_series(SeriesKind::Q, 1, 1, k as usize);
            assert_eq!(q_schur(&padded, None, 1, 1).unwrap(), q[k as usize]);
        }
    }

    #[test]
    fn odd_expansion_matches_padding() {
        for parts in [vec![3], vec![3, 2, 1], vec![4, 2, 1], vec![5, 3, 1], vec![4, 3, 2]] {
            let l = StrictPartition::new(parts).unwrap();
            assert_eq!(
                q_schur(&l, None, 1, 1).unwrap(),
                q_schur_odd_expansion(&l, 1, 1).unwrap()
            );
        }
    }

    #[test]
    fn zero_shift_pairs_agree() {
        let z = ShiftVector::zero();
        for a in 1..6 {
            for b in 0..a {
                assert_eq!(
                    shifted_q_pair(a, b, &z, &z, 1, 1).unwrap(),
                    q_pair(a, b, 1, 1).unwrap()
                );
            }
        }
    }
}
