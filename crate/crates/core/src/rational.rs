//! Exact rational numbers and their text forms.
//!
//! Everything in the calculus is a [`Prob`], an arbitrary-precision
//! rational. Floating point never appears; decimals are only produced when
//! rendering and are only accepted as exact literals when parsing.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Prob = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Prob {
    Prob::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Prob {
    Prob::from_integer(BigInt::from(value))
}

pub fn zero() -> Prob {
    Prob::zero()
}

pub fn one() -> Prob {
    Prob::one()
}

pub fn in_unit_interval(value: &Prob) -> bool {
    !value.is_negative() && *value <= Prob::one()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a rational literal")]
pub struct LiteralError(pub String);

/// Parses `a/b`, an integer, or a decimal such as `0.000001` into an exact
/// rational. Decimals are converted digit by digit, so `0.8` is exactly 4/5.
pub fn parse_literal(text: &str) -> Result<Prob, LiteralError> {
    let bad = || LiteralError(text.to_string());
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num).ok_or_else(bad)?;
        let den = parse_decimal(den).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(num / den);
    }
    parse_decimal(text).ok_or_else(bad)
}

fn parse_decimal(text: &str) -> Option<Prob> {
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Some(Prob::new(numer, denom))
}

/// Renders as `n/d`, or `n` when the denominator is 1.
pub fn fraction(value: &Prob) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Renders with exactly `digits` fractional digits, rounding half away
/// from zero.
pub fn decimal(value: &Prob, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Prob::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r * 2;
    let rounded = if twice >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_str_radix(10);
    format!("{sign}{int_part}.{frac:0>digits$}")
}

/// Rounds to `digits` decimal places and returns the result as a rational.
pub fn round_to(value: &Prob, digits: usize) -> Prob {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value * Prob::from_integer(scale.clone());
    let rounded = if scaled.is_negative() {
        -((-scaled.clone()) + ratio(1, 2)).floor()
    } else {
        (scaled + ratio(1, 2)).floor()
    };
    rounded / Prob::from_integer(scale)
}

/// Nearest `f64`, for callers that need a float at an API boundary.
pub fn to_f64(value: &Prob) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn is_positive(value: &Prob) -> bool {
    value.numer().sign() == Sign::Plus
}
