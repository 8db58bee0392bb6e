//! Human-readable text, e.g. `1/2*t1^2 + t2`, and its parser.
//!
//! Variables print as `p3`/`t3` for one component and `p2_3`/`t2_3`
//! (component 2, index 3) otherwise. Terms appear in descending canonical
//! order; a Fock vector prints one `(m_1,...,m_s): poly` line per sector in
//! ascending charge order.

use num_traits::{One, Signed};

use crate::algebra::{format_rational, parse_rational, Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::fock::{ChargeVector, FockVector};
use crate::serial::{basis_coeff, from_basis_coeff, Basis};

fn var_name(v: Var, s: usize, basis: Basis) -> String {
    let letter = match basis {
        Basis::P => 'p',
        Basis::T => 't',
    };
    if s == 1 {
        format!("{letter}{}", v.index())
    } else {
        format!("{letter}{}_{}", v.component(), v.index())
    }
}

fn monomial_text(m: &Monomial, s: usize, basis: Basis) -> String {
    m.factors()
        .iter()
        .map(|&(v, e)| {
            let name = var_name(v, s, basis);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text of `f`; the zero polynomial prints as `0`.
pub fn render_poly(f: &Poly, basis: Basis) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.iter_desc().enumerate() {
        let c = basis_coeff(m, c, basis);
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&monomial_text(m, f.s(), basis));
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&monomial_text(m, f.s(), basis));
        }
    }
    out
}

fn charge_text(m: &ChargeVector) -> String {
    let parts: Vec<String> = m.0.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// One line per sector; the zero vector prints as `0`.
pub fn render_fock(v: &FockVector, basis: Basis) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.sectors()
        .map(|(m, f)| format!("{}: {}", charge_text(m), render_poly(f, basis)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_var(tok: &str, s: usize) -> Result<(Var, Basis)> {
    let bad = || Error::parse(format!("bad variable '{tok}'"));
    let mut chars = tok.chars();
    let basis = match chars.next() {
        Some('p') => Basis::P,
        Some('t') => Basis::T,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let (a, n) = match rest.split_once('_') {
        Some((a, n)) => (a.parse::<usize>().map_err(|_| bad())?, n),
        None if s == 1 => (1, rest),
        None => return Err(bad()),
    };
    let n: u32 = n.parse().map_err(|_| bad())?;
    if a == 0 || a > s {
        return Err(Error::ComponentOutOfRange { component: a, s });
    }
    if n == 0 || n > Var::MAX_INDEX {
        return Err(bad());
    }
    Ok((Var::new(a, n), basis))
}

fn parse_term(text: &str, s: usize) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut factors = Vec::new();
    let mut basis: Option<Basis> = None;
    for piece in text.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::parse(format!("empty factor in '{text}'")));
        }
        if piece.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(piece)?;
            continue;
        }
        let (name, exp) = match piece.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("bad exponent in '{piece}'")))?,
            ),
            None => (piece, 1),
        };
        let (v, b) = parse_var(name, s)?;
        if basis.is_some_and(|x| x != b) {
            return Err(Error::parse(format!("mixed p and t variables in '{text}'")));
        }
        basis = Some(b);
        if exp > 0 {
            factors.push((v, exp));
        }
    }
    let m = Monomial::from_factors(factors);
    let c = from_basis_coeff(&m, &coeff, basis.unwrap_or_default());
    Ok((m, c))
}

/// Parses the output of [`render_poly`] (either basis) in `s` components.
pub fn parse_poly(text: &str, s: usize) -> Result<Poly> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut out = Poly::zero(s);
    let mut rest = text;
    let mut sign = Rational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    }
    loop {
        let cut = rest.find([' ', '+', '-']).map(|i| {
            // Split only on a surrounded binary operator.
            let tail = &rest[i..];
            let trimmed = tail.trim_start();
            (i, trimmed)
        });
        let (term, next) = match cut {
            Some((i, tail)) if tail.starts_with('+') || tail.starts_with('-') => {
                let op_neg = tail.starts_with('-');
                (&rest[..i], Some((op_neg, tail[1..].trim_start())))
            }
            Some((i, tail)) if tail.is_empty() => (&rest[..i], None),
            Some(_) => return Err(Error::parse(format!("unexpected text near '{rest}'"))),
            None => (rest, None),
        };
        let (m, c) = parse_term(term, s)?;
        out.add_term(m, c * &sign);
        match next {
            Some((neg, tail)) => {
                sign = if neg { -Rational::one() } else { Rational::one() };
                rest = tail;
            }
            None => break,
        }
    }
    if text == "0" {
        return Ok(Poly::zero(s));
    }
    Ok(out)
}

/// Parses the output of [`render_fock`].
pub fn parse_fock(text: &str, s: usize) -> Result<FockVector> {
    let mut out = FockVector::zero(s);
    if text.trim() == "0" {
        return Ok(out);
    }
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (charge, poly) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("missing ':' in '{line}'")))?;
        let charge = charge.trim();
        let inner = charge
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("bad charge '{charge}'")))?;
        let m = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::parse(format!("bad charge '{charge}'"))))
            .collect::<Result<Vec<_>>>()?;
        out.add_sector(ChargeVector(m), parse_poly(poly, s)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn renders_examples() {
        let f = Poly::var(1, 1, 1).pow(2).scale(&rat(1, 2)) + Poly::var(1, 1, 2).scale(&rat(1, 2));
        assert_eq!(render_poly(&f, Basis::T), "1/2*t1^2 + t2");
        assert_eq!(render_poly(&f, Basis::P), "1/2*p1^2 + 1/2*p2");
        assert_eq!(render_poly(&Poly::zero(1), Basis::T), "0");
        let g = Poly::var(1, 1, 3).scale(&rat(1, 3)) - Poly::var(1, 1, 1).pow(3).scale(&rat(1, 3));
        assert_eq!(render_poly(&g, Basis::T), "-1/3*t1^3 + t3");
        assert_eq!(render_poly(&(-Poly::one(1)), Basis::P), "-1");
    }

    #[test]
    fn fock_listing() {
        let mut v = FockVector::zero(2);
        v.add_sector(ChargeVector(vec![1, 0]), Poly::one(2)).unwrap();
        v.add_sector(ChargeVector(vec![0, 1]), Poly::one(2)).unwrap();
        assert_eq!(render_fock(&v, Basis::P), "(0,1): 1\n(1,0): 1");
        assert_eq!(parse_fock(&render_fock(&v, Basis::T), 2).unwrap(), v);
    }

    #[test]
    fn round_trips() {
        let f = Poly::var(2, 1, 1).pow(3).scale(&rat(-7, 3))
            + Poly::var(2, 2, 4).scale(&int(5))
            + Poly::constant(2, rat(1, 2))
            - &Poly::var(2, 1, 2) * &Poly::var(2, 2, 1);
        for basis in [Basis::P, Basis::T] {
            let text = render_poly(&f, basis);
            assert_eq!(parse_poly(&text, 2).unwrap(), f, "{text}");
        }
        assert!(parse_poly("0", 1).unwrap().is_zero());
        assert!(parse_poly("x1", 1).is_err());
        assert!(parse_poly("p1 +", 1).is_err());
        assert!(parse_poly("p1*t2", 1).is_err());
    }
}
