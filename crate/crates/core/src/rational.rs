//! Exact rationals and their text forms.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in canonical form
//! (positive denominator, coprime parts) after every operation. All payoffs,
//! probabilities and certificates in this crate are rationals.
//!
//! Accepted text forms are integers (`-3`), finite decimals (`6.4`, `1e-2`)
//! and fractions (`32/5`). Output always uses `num/den`, or `num` when the
//! denominator is one, so values round-trip losslessly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`. Panics on a zero denominator; use [`checked_div`] for data.
pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Positive `s` making `s·xs` coprime integers; one for an all-zero vector.
pub fn integer_scale(xs: &[Rational]) -> Rational {
    let nonzero = || xs.iter().filter(|x| !x.is_zero());
    let den = nonzero().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let num = nonzero().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(den, num)
    }
}

pub fn sum<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    xs.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

/// Parse an integer, finite decimal (optionally with exponent) or `num/den`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(fraction.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{whole}{fraction}");
    let mut num: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().ok()?
    };
    if negative {
        num = -num;
    }
    let scale = exponent - fraction.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Read a rational from a JSON number or string.
pub fn from_json(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => parse(&n.to_string()),
        Value::String(s) => parse(s),
        other => Err(Error::ParseRational(other.to_string())),
    }
}

pub fn to_json(value: &Rational) -> Value {
    Value::String(value.to_string())
}

pub fn vec_to_json(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(to_json).collect())
}

pub fn vec_from_json(value: &Value) -> Result<Vec<Rational>> {
    value
        .as_array()
        .ok_or_else(|| Error::invalid(format!("expected an array of rationals, got {value}")))?
        .iter()
        .map(from_json)
        .collect()
}

/// Entries are non-negative and sum to exactly one.
pub fn is_probability_vector(xs: &[Rational]) -> bool {
    !xs.is_empty() && xs.iter().all(|x| !x.is_negative()) && sum(xs).is_one()
}
