//! Exact rational scalars.
//!
//! Every value in the crate is a [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The textual
//! form is `p/q`, or just `p` when `q = 1`; the sign lives on the numerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, reduced after every operation.
pub type Rational = BigRational;

/// Builds `p / q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `base^k` for a positive integer base and any integer exponent.
///
/// The negative-exponent case is the `(m+1)^k` factor of the polylogarithm
/// factorial function for negative index.
pub fn int_pow_rational(base: u64, k: i64) -> Rational {
    assert!(base >= 1, "int_pow_rational requires base >= 1");
    let p = BigInt::from(base).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `(-1)^e` as a rational.
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `-p`, `p/q`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}
