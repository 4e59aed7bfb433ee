//! Exact rational scalars and small helpers shared across the crate.
//!
//! All endpoints, spectrum points, periods and shifts are `Rational`
//! (arbitrary-precision, always in lowest terms). Values cross the JSON
//! boundary as `"p/q"` strings, never as floats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Fractional part in `[0, 1)`, exact.
pub fn mod_one(x: &Rational) -> Rational {
    x - x.floor()
}

/// Reduce `x` modulo a positive period `p`, landing in `[0, p)`.
pub fn mod_period(x: &Rational, p: &Rational) -> Rational {
    let q = (x / p).floor();
    x - q * p
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range rationals do not occur for desk-scale inputs.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        acc = acc.lcm(x.denom());
    }
    acc
}

/// Parse an exact rational from `"p/q"` or plain integer `"p"` form.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| bad())?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Format a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
