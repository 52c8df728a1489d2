use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (zero is `0/1`).
pub type Rational = BigRational;

/// Exact `n`-th root of an integer, if one exists.
///
/// Negative inputs have a root only for odd `n`.
pub fn int_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if n == 1 || v.is_zero() {
        return Some(v.clone());
    }
    if v.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return int_nth_root(&-v, n).map(|r| -r);
    }
    let r = v.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
}

/// Exact `n`-th root of a rational, if one exists in Q.
pub fn rational_nth_root(v: &Rational, n: u32) -> Option<Rational> {
    let num = int_nth_root(v.numer(), n)?;
    let den = int_nth_root(v.denom(), n)?;
    Some(Rational::new(num, den))
}

/// Parses `"-3"`, `"7/4"` or `"+2"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    let bad = |m: &str| Error::Parse { offset: 0, message: format!("{m}: {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.as_str(), "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `n/d` reduced, for `d > 0`. Reduces against `n mod d` so an integer
/// result never runs a gcd on the full-size numerator.
pub(crate) fn reduced(n: BigInt, d: BigInt) -> Rational {
    debug_assert!(d.is_positive());
    if d.is_one() {
        return Rational::from_integer(n);
    }
    let g = d.gcd(&n.mod_floor(&d));
    if g.is_one() {
        Rational::new_raw(n, d)
    } else {
        Rational::new_raw(n / &g, d / g)
    }
}

pub(crate) fn add_q(a: &Rational, b: &Rational) -> Rational {
    if a.denom() == b.denom() {
        return reduced(a.numer() + b.numer(), a.denom().clone());
    }
    a + b
}

pub(crate) fn sub_q(a: &Rational, b: &Rational) -> Rational {
    if a.denom() == b.denom() {
        return reduced(a.numer() - b.numer(), a.denom().clone());
    }
    a - b
}

pub(crate) fn mul_q(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        return Rational::from_integer(a.numer() * b.numer());
    }
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let sign = a.is_negative() != b.is_negative();
    let n = a.numer().abs() * b.numer().abs();
    let d = a.denom() * b.denom();
    let r = reduced(n, d);
    if sign {
        -r
    } else {
        r
    }
}

/// `±1`, the rational roots of unity.
pub fn is_unit(v: &Rational) -> bool {
    v.denom().is_one() && v.numer().abs().is_one()
}
