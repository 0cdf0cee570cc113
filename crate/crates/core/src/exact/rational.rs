//! Arbitrary-precision rationals.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator. This module adds exact parsing,
//! a few constructors and the small numeric helpers the rest of the crate
//! needs (perfect-square tests, logarithms of huge values).

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer literal, or a decimal literal such as
/// `"0.239"` / `"-1.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().ok()?);
    let shift = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= Rational::from_integer(scale);
    } else {
        value /= Rational::from_integer(scale);
    }
    Some(if negative { -value } else { value })
}

/// Sign as -1, 0 or +1.
pub fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Natural log of |n|, accurate for integers far outside the f64 range.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_abs(q: &Rational) -> f64 {
    ln_abs_bigint(q.numer()) - ln_abs_bigint(q.denom())
}

/// `num / den` rounded to f64 without overflowing intermediate conversions.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if (num.sign() == Sign::Minus) ^ (den.sign() == Sign::Minus) {
        -1.0
    } else {
        1.0
    };
    let (n, d) = (num.abs(), den.abs());
    // Scale the quotient to roughly 64 significant bits before dividing.
    let k = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if k >= 0 {
        (n << k as u64) / d
    } else {
        n / (d << (-k) as u64)
    };
    let q = q.to_f64().unwrap_or(f64::MAX);
    sign * ldexp(q, -k)
}

pub(crate) fn ldexp(x: f64, exp: i64) -> f64 {
    // Split to avoid overflow of the intermediate power of two.
    let mut x = x;
    let mut e = exp;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

pub fn to_f64(q: &Rational) -> f64 {
    ratio_to_f64(q.numer(), q.denom())
}

/// Exact conversion of a finite f64.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub mod serde_rational {
    //! Serializes a rational as its `"p/q"` string.
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
