//! Exact rationals and their textual / JSON forms.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or `-p/q` without ever going through floating point.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(n).map_err(|_| Error::parse(format!("not a rational: {text:?}")))?;
    let den = BigInt::from_str(d).map_err(|_| Error::parse(format!("not a rational: {text:?}")))?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Floating-point approximation, for rendering only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_int(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::domain(format!("integer {x} exceeds the 64-bit range")))
}

/// Largest integer `m` with `m*m <= n` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Largest integer `m` with `m <= sqrt(x)`, for `x >= 0`.
pub fn floor_sqrt(x: &Rational) -> BigInt {
    assert!(!x.is_negative(), "floor_sqrt of a negative number");
    // floor(sqrt(p/q)) = floor(sqrt(p*q) / q)
    let pq = x.numer() * x.denom();
    let mut m = isqrt(&pq).div_floor(x.denom());
    while Rational::from_integer((&m + 1u32) * (&m + 1u32)) <= *x {
        m += 1u32;
    }
    while Rational::from_integer(&m * &m) > *x {
        m -= 1u32;
    }
    m
}

/// Exact comparison of `sqrt(x)` with `y`, for `x >= 0`.
pub fn cmp_sqrt(x: &Rational, y: &Rational) -> Ordering {
    if y.is_negative() {
        return Ordering::Greater;
    }
    x.cmp(&(y * y))
}

/// Serde adapter storing a [`Rational`] as the string `"p/q"` (or `"p"`).
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for fixed-size arrays of rationals.
pub mod serde_rational_array {
    use super::*;
    use crate::lattice::RANK;

    pub fn serialize<S: Serializer>(x: &[Rational; RANK], s: S) -> std::result::Result<S::Ok, S::Error> {
        x.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[Rational; RANK], D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != RANK {
            return Err(serde::de::Error::custom(format!("expected {RANK} rationals, got {}", v.len())));
        }
        let mut out: [Rational; RANK] = std::array::from_fn(|_| Rational::zero());
        for (slot, text) in out.iter_mut().zip(v) {
            *slot = parse_rational(&text).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}
