//! Textual forms of classes and Mukai vectors.

use crate::error::{Error, Result};
use crate::lattice::{NumClass, RationalNumClass, RANK};
use crate::mukai::MukaiVector;
use crate::rational::{parse_rational, Rational};

/// `c1,...,c10` as integers; the single token `0` is the zero class.
pub fn parse_class(text: &str) -> Result<NumClass> {
    if text.trim() == "0" {
        return Ok(NumClass::ZERO);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != RANK {
        return Err(Error::parse(format!("a class needs {RANK} comma-separated integers, got {:?}", text)));
    }
    let mut out = [0i64; RANK];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| Error::parse(format!("not an integer: {p:?}")))?;
    }
    Ok(NumClass(out))
}

/// `q1,...,q10` as rationals `p/q`; the single token `0` is the zero class.
pub fn parse_rational_class(text: &str) -> Result<RationalNumClass> {
    if text.trim() == "0" {
        return Ok(RationalNumClass::zero());
    }
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != RANK {
        return Err(Error::parse(format!("a class needs {RANK} comma-separated rationals, got {:?}", text)));
    }
    let mut out: [Rational; RANK] = std::array::from_fn(|_| Rational::default());
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = parse_rational(p)?;
    }
    Ok(RationalNumClass(out))
}

/// `r:c:s` with `c` a class and `s ∈ ½ℤ` written `p/q`.
pub fn parse_mukai(text: &str) -> Result<MukaiVector> {
    let parts: Vec<&str> = text.split(':').collect();
    let [r, c, s] = parts.as_slice() else {
        return Err(Error::parse(format!("a Mukai vector is written r:c1,...,c10:s, got {text:?}")));
    };
    let r = r.trim().parse().map_err(|_| Error::parse(format!("not an integer rank: {r:?}")))?;
    let c = parse_class(c)?;
    let s = parse_rational(s)?;
    MukaiVector::with_s(r, c, &s).map_err(|e| Error::parse(e.to_string()))
}
