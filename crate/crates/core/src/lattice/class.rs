//! Integral and rational classes in Num(Y).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::RANK;
use crate::error::Result;
use crate::rational::{format_rational, int, serde_rational_array, to_i64, Rational};

/// Integer coordinates in the Gram basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NumClass(pub [i64; RANK]);

impl NumClass {
    pub const ZERO: NumClass = NumClass([0; RANK]);

    pub fn basis(i: usize) -> Self {
        let mut c = [0; RANK];
        c[i] = 1;
        NumClass(c)
    }

    /// Leading coordinates from `head`, zero elsewhere.
    pub fn from_slice(head: &[i64]) -> Self {
        let mut c = [0; RANK];
        c[..head.len()].copy_from_slice(head);
        NumClass(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Sign-normalized so the first nonzero coordinate is positive.
    pub fn sign_normalized(self) -> Self {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => -self,
            _ => self,
        }
    }

    pub fn to_rational(&self) -> RationalNumClass {
        RationalNumClass(std::array::from_fn(|i| int(self.0[i])))
    }
}

impl Add for NumClass {
    type Output = NumClass;
    fn add(self, o: NumClass) -> NumClass {
        NumClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for NumClass {
    type Output = NumClass;
    fn sub(self, o: NumClass) -> NumClass {
        NumClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass(self.0.map(|x| -x))
    }
}

impl Mul<NumClass> for i64 {
    type Output = NumClass;
    fn mul(self, c: NumClass) -> NumClass {
        NumClass(c.0.map(|x| self * x))
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Rational coordinates in the Gram basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalNumClass(#[serde(with = "serde_rational_array")] pub [Rational; RANK]);

impl RationalNumClass {
    pub fn zero() -> Self {
        RationalNumClass(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalNumClass(std::array::from_fn(|i| &self.0[i] * k))
    }

    /// `λ·H` for an integral class `H`.
    pub fn multiple(k: &Rational, h: &NumClass) -> Self {
        RationalNumClass(std::array::from_fn(|i| k * int(h.0[i])))
    }

    /// Least positive `den` with `den·self` integral, and that integral class.
    pub fn clear_denominators(&self) -> Result<(NumClass, i64)> {
        let den = self.0.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut out = [0i64; RANK];
        for (slot, x) in out.iter_mut().zip(self.0.iter()) {
            *slot = to_i64(&(x.numer() * (&den / x.denom())))?;
        }
        Ok((NumClass(out), to_i64(&den)?))
    }

    /// The class itself when all coordinates are integers.
    pub fn as_integral(&self) -> Option<NumClass> {
        if self.0.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let mut out = [0i64; RANK];
        for (slot, x) in out.iter_mut().zip(self.0.iter()) {
            *slot = to_i64(x.numer()).ok()?;
        }
        Some(NumClass(out))
    }
}

impl Add for &RationalNumClass {
    type Output = RationalNumClass;
    fn add(self, o: &RationalNumClass) -> RationalNumClass {
        RationalNumClass(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &RationalNumClass {
    type Output = RationalNumClass;
    fn sub(self, o: &RationalNumClass) -> RationalNumClass {
        RationalNumClass(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &RationalNumClass {
    type Output = RationalNumClass;
    fn neg(self) -> RationalNumClass {
        RationalNumClass(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl From<NumClass> for RationalNumClass {
    fn from(c: NumClass) -> Self {
        c.to_rational()
    }
}

impl fmt::Display for RationalNumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
