//! Mukai vectors `(r, c, s)` with `s ∈ ½ℤ` stored as `s2 = 2s`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GramSpec, NumClass, RationalNumClass};
use crate::rational::{format_rational, int, rat, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "MukaiJson", try_from = "MukaiJson")]
pub struct MukaiVector {
    pub r: i64,
    pub c: NumClass,
    pub s2: i64,
}

impl MukaiVector {
    pub fn new(r: i64, c: NumClass, s2: i64) -> Self {
        MukaiVector { r, c, s2 }
    }

    /// Accepts `s` as a rational; it must lie in ½ℤ.
    pub fn with_s(r: i64, c: NumClass, s: &Rational) -> Result<Self> {
        let twice = s * int(2);
        if !twice.is_integer() {
            return Err(Error::domain(format!("s = {} is not a half-integer", format_rational(s))));
        }
        let s2 = crate::rational::to_i64(twice.numer())?;
        Ok(MukaiVector { r, c, s2 })
    }

    /// `(1, 0, ½ − n)`, the class of an ideal sheaf of `n` points.
    pub fn hilbert(n: i64) -> Self {
        MukaiVector { r: 1, c: NumClass::ZERO, s2: 1 - 2 * n }
    }

    pub fn s(&self) -> Rational {
        rat(self.s2, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s2 == 0 && self.c.is_zero()
    }

    /// `s2 ≡ r (mod 2)`, true for every Mukai vector of an object.
    pub fn has_geometric_parity(&self) -> bool {
        (self.s2 - self.r).rem_euclid(2) == 0
    }

    pub fn add(&self, o: &MukaiVector) -> MukaiVector {
        MukaiVector { r: self.r + o.r, c: self.c + o.c, s2: self.s2 + o.s2 }
    }

    pub fn neg(&self) -> MukaiVector {
        MukaiVector { r: -self.r, c: -self.c, s2: -self.s2 }
    }

    pub fn scale(&self, k: i64) -> MukaiVector {
        MukaiVector { r: k * self.r, c: k * self.c, s2: k * self.s2 }
    }

    pub fn to_rational(&self) -> RationalMukaiVector {
        RationalMukaiVector { r: int(self.r), c: self.c.to_rational(), s: self.s() }
    }
}

/// JSON form `{"r", "c", "s"}` with `s` a rational string.
#[derive(Serialize, Deserialize)]
struct MukaiJson {
    r: i64,
    c: NumClass,
    #[serde(with = "serde_rational")]
    s: Rational,
}

impl From<MukaiVector> for MukaiJson {
    fn from(v: MukaiVector) -> Self {
        MukaiJson { r: v.r, c: v.c, s: v.s() }
    }
}

impl TryFrom<MukaiJson> for MukaiVector {
    type Error = Error;
    fn try_from(j: MukaiJson) -> Result<Self> {
        MukaiVector::with_s(j.r, j.c, &j.s)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.c, format_rational(&self.s()))
    }
}

/// Mukai vector with rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMukaiVector {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    pub c: RationalNumClass,
    #[serde(with = "serde_rational")]
    pub s: Rational,
}

/// `c.c′ − r s′ − r′ s`.
pub fn mukai_pair(gram: &GramSpec, v: &MukaiVector, w: &MukaiVector) -> Rational {
    rat(2 * gram.pair(&v.c, &w.c) - v.r * w.s2 - w.r * v.s2, 2)
}

/// `v² = c² − r s2`, always an integer.
pub fn mukai_square(gram: &GramSpec, v: &MukaiVector) -> i64 {
    gram.square(&v.c) - v.r * v.s2
}

pub fn mukai_pair_rational(gram: &GramSpec, v: &RationalMukaiVector, w: &RationalMukaiVector) -> Rational {
    gram.pair_rational(&v.c, &w.c) - &v.r * &w.s - &w.r * &v.s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisibility {
    pub m: i64,
    pub v0: MukaiVector,
}

/// Writes `v = m·v0` with `v0` primitive.
///
/// Vectors with geometric parity are divided inside the sublattice
/// `{s2 ≡ r mod 2}` of Mukai vectors of objects, where `(2, 0, 0)` is
/// primitive. Other vectors are divided in ℤ ⊕ Num ⊕ ½ℤ.
pub fn divisibility(v: &MukaiVector) -> Result<Divisibility> {
    if v.is_zero() {
        return Err(Error::domain("the zero vector has no divisibility"));
    }
    let g = [v.r, v.s2].iter().fold(v.c.content(), |acc, x| acc.gcd(x));
    let quotient = |m: i64| MukaiVector { r: v.r / m, c: NumClass(v.c.0.map(|x| x / m)), s2: v.s2 / m };
    let mut m = g;
    if v.has_geometric_parity() && !quotient(g).has_geometric_parity() {
        // v/g has odd r + s2 while v does not: g is even and v/(g/2) is geometric
        m = g / 2;
    }
    Ok(Divisibility { m, v0: quotient(m) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackReport {
    pub pullback_square: i64,
    pub divisibility: i64,
    pub hauzer_parity_ok: bool,
}

/// Numerics of `π*v = (r, π*c, 2s)` on the K3 cover.
pub fn pullback_report(gram: &GramSpec, v: &MukaiVector) -> PullbackReport {
    let g = [v.r, v.s2].iter().fold(v.c.content(), |acc, x| acc.gcd(x));
    let divisibility = if g % 2 == 0 { 2 } else { 1 };
    let c_sq = gram.square(&v.c);
    // c₂ = c²/2 − ch₂ with ch₂ = s − r/2
    let twice_c2 = c_sq - v.s2 + v.r;
    let c2_odd = twice_c2 % 2 == 0 && (twice_c2 / 2).rem_euclid(2) == 1;
    let hauzer_parity_ok = c2_odd && (v.r + v.s2).rem_euclid(4) == 2;
    PullbackReport { pullback_square: 2 * mukai_square(gram, v), divisibility, hauzer_parity_ok }
}

/// Mukai pairing of the K3 images: the Num pairing doubles on `π*`.
pub fn pullback_pair(gram: &GramSpec, v: &MukaiVector, w: &MukaiVector) -> i64 {
    // (r, π*c, s2) with pairing π*c.π*c′ − r s2′ − r′ s2
    2 * gram.pair(&v.c, &w.c) - v.r * w.s2 - w.r * v.s2
}

/// `v + 2(v,u)u` for `u² = −1`.
pub fn weakly_spherical_reflect(gram: &GramSpec, v: &MukaiVector, u: &MukaiVector) -> Result<MukaiVector> {
    if mukai_square(gram, u) != -1 {
        return Err(Error::domain(format!("u² = {} is not −1", mukai_square(gram, u))));
    }
    // 2(v,u) is an integer
    let k = 2 * gram.pair(&v.c, &u.c) - v.r * u.s2 - u.r * v.s2;
    Ok(v.add(&u.scale(k)))
}

/// `e^D · v`: `(r, c + rD, s + c.D + rD²/2)`.
pub fn twist(gram: &GramSpec, v: &MukaiVector, d: &NumClass) -> MukaiVector {
    MukaiVector {
        r: v.r,
        c: v.c + v.r * *d,
        s2: v.s2 + 2 * gram.pair(&v.c, d) + v.r * gram.square(d),
    }
}

/// `e^{−β} · v`: `(r, c − rβ, rβ²/2 − c.β + s)`.
pub fn twist_rational(gram: &GramSpec, v: &RationalMukaiVector, beta: &RationalNumClass) -> RationalMukaiVector {
    let c = &v.c - &beta.scale(&v.r);
    let s = &v.r * gram.square_rational(beta) / int(2) - gram.pair_rational(&v.c, beta) + &v.s;
    RationalMukaiVector { r: v.r.clone(), c, s }
}

impl RationalMukaiVector {
    pub fn zero() -> Self {
        RationalMukaiVector { r: Rational::zero(), c: RationalNumClass::zero(), s: Rational::zero() }
    }
}
