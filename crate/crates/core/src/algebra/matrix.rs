//! Square matrices of polynomials: determinants and Pfaffians.

use std::collections::HashMap;

use num_traits::One;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix with polynomial entries over `s` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    s: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// Largest size handled by memoized Laplace expansion; larger matrices use
/// fraction-free elimination.
pub const LAPLACE_LIMIT: usize = 6;

impl PolyMatrix {
    pub fn from_rows(s: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::invalid("ragged matrix rows"));
            }
            for entry in row {
                if entry.s() != s {
                    return Err(Error::ComponentMismatch {
                        left: s,
                        right: entry.s(),
                    });
                }
                data.push(entry);
            }
        }
        Ok(PolyMatrix {
            s,
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Builds an `n × n` matrix from an entry function.
    pub fn from_fn(s: usize, n: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(s, rows)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<Poly> {
        let n = self.check_square()?;
        if n <= LAPLACE_LIMIT {
            self.det_laplace()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along rows with minors memoized by column set.
    pub fn det_laplace(&self) -> Result<Poly> {
        let n = self.check_square()?;
        if n == 0 {
            return Ok(Poly::one(self.s));
        }
        assert!(n < 64, "matrix too large for Laplace expansion");
        // minors[mask] = det of rows (n - |mask|)..n restricted to columns in mask.
        let mut minors: HashMap<u64, Poly> = HashMap::new();
        for j in 0..n {
            let e = self.get(n - 1, j);
            if !e.is_zero() {
                minors.insert(1 << j, e.clone());
            }
        }
        for r in (0..n - 1).rev() {
            let mut next: HashMap<u64, Poly> = HashMap::new();
            for (mask, minor) in &minors {
                for j in 0..n {
                    let bit = 1u64 << j;
                    if mask & bit != 0 {
                        continue;
                    }
                    let e = self.get(r, j);
                    if e.is_zero() {
                        continue;
                    }
                    let below = (mask & (bit - 1)).count_ones();
                    let sign = if below % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    next.entry(mask | bit)
                        .or_insert_with(|| Poly::zero(self.s))
                        .add_product(e, minor, &sign);
                }
            }
            next.retain(|_, p| !p.is_zero());
            minors = next;
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(minors.remove(&full).unwrap_or_else(|| Poly::zero(self.s)))
    }

    /// Bareiss fraction-free elimination with exact polynomial division.
    pub fn det_bareiss(&self) -> Result<Poly> {
        let n = self.check_square()?;
        if n == 0 {
            return Ok(Poly::one(self.s));
        }
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one(self.s);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(self.s)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Pfaffian of an even-dimensional skew-symmetric matrix, by recursive
    /// expansion along the first remaining row with subsets memoized.
    pub fn pfaffian(&self) -> Result<Poly> {
        let n = self.check_square()?;
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        assert!(n < 64, "matrix too large for Pfaffian expansion");
        for i in 0..n {
            if !self.get(i, i).is_zero() {
                return Err(Error::NotSkew(i, i));
            }
            for j in i + 1..n {
                if self.get(i, j) != &-self.get(j, i) {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pf_rec(full, &mut memo))
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if mask == 0 {
            return Poly::one(self.s);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << i);
        let mut acc = Poly::zero(self.s);
        let mut position = 0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let e = self.get(i, j);
            if !e.is_zero() {
                let sub = self.pf_rec(rest & !(1u64 << j), memo);
                let sign = if position % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                acc.add_product(e, &sub, &sign);
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}
