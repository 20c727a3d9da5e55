//! Exact rational helpers. Labels `k`, `l` live on the half- and quarter-integer
//! lattices, and every polynomial manipulation stays in this type.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3/2"`, `"-1/4"` or `"2"`. Decimal notation is rejected so that
/// labels never pass through a float.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() || t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::InvalidParameter(format!("'{s}' is not an exact fraction p/q")));
    }
    if let Some((_, den)) = t.split_once('/') {
        if BigInt::from_str(den.trim()).map(|d| d.is_zero()).unwrap_or(false) {
            return Err(Error::InvalidParameter(format!("'{s}' has zero denominator")));
        }
    }
    Rational::from_str(t).map_err(|_| Error::InvalidParameter(format!("'{s}' is not an exact fraction p/q")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: go through the ratio of floats.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `"3/2"` style rendering; integers print without a denominator.
pub fn display(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

/// True when `q * m` is an integer.
pub fn is_multiple_of_inverse(q: &Rational, m: i64) -> bool {
    (q * int(m)).is_integer()
}

pub fn to_usize(q: &Rational) -> Option<usize> {
    if q.is_integer() && !q.is_negative() {
        q.numer().to_usize()
    } else {
        None
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_q(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// `serialize_with` helper rendering a rational as a `"p/q"` string.
pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&display(q))
}

pub fn serialize_opt<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&display(q)),
        None => s.serialize_none(),
    }
}
