//! The exact scalar type: arbitrary-precision rationals.
//!
//! `Rational` keeps its denominator positive and the fraction gcd-reduced by
//! construction, so equality of scalars is structural equality. Values are
//! rendered and parsed in the plain `p/q` form used by the CLI's JSON
//! schema (`"3"`, `"-7/2"`, ...).

use super::ExactLinError;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Arbitrary-precision rational number with positive, gcd-reduced
/// denominator.
pub type Rational = BigRational;

/// Convenience constructor: the rational `n/d`.
///
/// Panics if `d == 0`; use [`parse_rational`] for fallible input.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a [`Rational`].
pub fn parse_rational(s: &str) -> Result<Rational, ExactLinError> {
    let malformed = |reason: &str| ExactLinError::MalformedRational {
        literal: s.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = s.trim();
    let (num_str, den_str) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| malformed("numerator is not an integer"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| malformed("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(malformed("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats a rational as `"p"` (integer) or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
