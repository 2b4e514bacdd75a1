//! Pseudo-walls in the `(b, u)` slice and the Gieseker-chamber bound.
//!
//! For `v = (r, C, s)` and `w = (r′, C′, s′)` with `C = c.H`, the condition
//! `Im(Z(w)·conj Z(v)) = 0` divided by `t` reads
//! `A (b² + u) + B b + K = 0` with
//! `A = d(rC′ − r′C)`, `B = 2d(r′s − rs′)`, `K = Cs′ − C′s`.

mod dv;
mod hilbert;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{GramSpec, NumClass};
use crate::mukai::MukaiVector;
use crate::rational::{cmp_sqrt, format_rational, int, serde_rational, to_f64, Rational};
use crate::stability::half_degree;

pub use dv::{enumerate_dv, gieseker_bound, gieseker_bound_with, gieseker_formula, mu_max, Destabilizer, GiesekerVariant};
pub use hilbert::{hilbert_wall_family, HilbertWall};

/// `a + √rad` with `rad ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactRadical {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub rad: Rational,
}

impl ExactRadical {
    pub fn new(a: Rational, rad: Rational) -> Self {
        assert!(!rad.is_negative(), "negative radicand");
        ExactRadical { a, rad }
    }

    pub fn rational(a: Rational) -> Self {
        ExactRadical { a, rad: Rational::zero() }
    }

    /// Exact comparison of the value with a rational `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // a + √rad vs x  ⇔  √rad vs x − a
        cmp_sqrt(&self.rad, &(x - &self.a))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.rad).sqrt()
    }
}

impl fmt::Display for ExactRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.rad.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write!(f, "sqrt({})", format_rational(&self.rad)),
            (false, false) => write!(f, "{} + sqrt({})", format_rational(&self.a), format_rational(&self.rad)),
        }
    }
}

/// `{(b, t) : (b − center_b)² + t² = radius_sq}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WallCircle {
    #[serde(with = "serde_rational")]
    pub center_b: Rational,
    #[serde(with = "serde_rational")]
    pub radius_sq: Rational,
}

impl WallCircle {
    /// `u = t²` of the circle above `b`; nonpositive when `b` is outside.
    pub fn u_at(&self, b: &Rational) -> Rational {
        let db = b - &self.center_b;
        &self.radius_sq - &db * &db
    }

    pub fn contains(&self, b: &Rational, u: &Rational) -> bool {
        self.u_at(b) == *u
    }

    /// Whether the two semicircles share a point with `u > 0`.
    pub fn meets_in_upper_half(&self, other: &WallCircle) -> bool {
        if self.center_b == other.center_b {
            return self.radius_sq == other.radius_sq && self.radius_sq.is_positive();
        }
        // (b−c1)² − ρ1² = (b−c2)² − ρ2² is linear in b
        let c1 = &self.center_b;
        let c2 = &other.center_b;
        let b = (c2 * c2 - c1 * c1 - &other.radius_sq + &self.radius_sq) / (int(2) * (c2 - c1));
        self.u_at(&b).is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallLocus {
    Circle(WallCircle),
    VerticalLine {
        #[serde(with = "serde_rational")]
        b: Rational,
    },
    Everywhere,
    Nowhere,
}

impl WallLocus {
    /// Whether `(b, u)` with `u > 0` lies on the locus.
    pub fn contains(&self, b: &Rational, u: &Rational) -> bool {
        match self {
            WallLocus::Circle(c) => c.contains(b, u),
            WallLocus::VerticalLine { b: b0 } => b == b0,
            WallLocus::Everywhere => true,
            WallLocus::Nowhere => false,
        }
    }
}

/// Coefficients `(A, B, K)` of the wall quadric `A(b² + u) + Bb + K`.
pub fn wall_coefficients(gram: &GramSpec, v: &MukaiVector, w: &MukaiVector, h: &NumClass) -> (Rational, Rational, Rational) {
    let d = int(half_degree(gram, h));
    let (r, r2) = (int(v.r), int(w.r));
    let (c, c2) = (int(gram.pair(&v.c, h)), int(gram.pair(&w.c, h)));
    let (s, s2) = (v.s(), w.s());
    let a = &d * (&r * &c2 - &r2 * &c);
    let b = int(2) * &d * (&r2 * &s - &r * &s2);
    let k = &c * &s2 - &c2 * &s;
    (a, b, k)
}

/// Locus in the slice where `Z(v)` and `Z(w)` are real-proportional.
pub fn wall_locus(gram: &GramSpec, v: &MukaiVector, w: &MukaiVector, h: &NumClass) -> WallLocus {
    let (a, b, k) = wall_coefficients(gram, v, w, h);
    if !a.is_zero() {
        let center_b = -&b / (int(2) * &a);
        let radius_sq = &center_b * &center_b - &k / &a;
        if radius_sq.is_positive() {
            WallLocus::Circle(WallCircle { center_b, radius_sq })
        } else {
            WallLocus::Nowhere
        }
    } else if !b.is_zero() {
        WallLocus::VerticalLine { b: -k / b }
    } else if k.is_zero() {
        WallLocus::Everywhere
    } else {
        WallLocus::Nowhere
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn g() -> GramSpec {
        GramSpec::enriques()
    }

    #[test]
    fn hilbert_wall_example() {
        // H² = 10, H.F = 1
        let h = NumClass::from_slice(&[1, 5]);
        let f = NumClass::from_slice(&[0, 1]);
        let w = MukaiVector::new(1, -f, 1);
        for n in 2..6 {
            let WallLocus::Circle(c) = wall_locus(&g(), &MukaiVector::hilbert(n), &w, &h) else { panic!() };
            assert_eq!(c.center_b, int(-n));
            assert_eq!(c.radius_sq, int(n * n) + rat(1 - 2 * n, 10));
        }
        let WallLocus::Circle(c) = wall_locus(&g(), &MukaiVector::hilbert(2), &w, &h) else { panic!() };
        assert_eq!(c.radius_sq, rat(37, 10));
        assert_eq!(c.u_at(&rat(-1, 10)), rat(9, 100));
    }

    #[test]
    fn phi_wall_example() {
        let h = NumClass::from_slice(&[1, 5]);
        let d = 5;
        for n in 2..6 {
            let v = MukaiVector::new(1, h, 1 - 2 * n + 2 * d);
            let w = MukaiVector::new(1, NumClass::ZERO, 1).neg();
            let WallLocus::Circle(c) = wall_locus(&g(), &v, &w, &h) else { panic!() };
            let c0 = rat(d - n, 2 * d);
            assert_eq!(c.radius_sq, &c0 * &c0 + rat(1, 2 * d));
            assert_eq!(c.center_b, c0);
        }
    }

    #[test]
    fn degenerate_loci() {
        let h = NumClass::from_slice(&[1, 5]);
        let v = MukaiVector::new(2, NumClass::from_slice(&[1, 0, 1]), 3);
        assert_eq!(wall_locus(&g(), &v, &v.scale(3), &h), WallLocus::Everywhere);
        assert_eq!(wall_locus(&g(), &v, &v.scale(-1), &h), WallLocus::Everywhere);
        // rank 0 against the point class never aligns for t > 0
        let a = MukaiVector::new(0, h, 0);
        let p = MukaiVector::new(0, NumClass::ZERO, 2);
        assert_eq!(wall_locus(&g(), &a, &p, &h), WallLocus::Nowhere);
        let o = MukaiVector::new(1, NumClass::ZERO, 1);
        assert_eq!(wall_locus(&g(), &o, &p, &h), WallLocus::VerticalLine { b: int(0) });
    }

    #[test]
    fn radical_comparison() {
        let x = ExactRadical::new(int(1), int(2));
        assert_eq!(x.cmp_rational(&rat(241, 100)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(242, 100)), Ordering::Less);
        assert_eq!(ExactRadical::new(int(1), int(4)).cmp_rational(&int(3)), Ordering::Equal);
        assert_eq!(x.cmp_rational(&int(0)), Ordering::Greater);
        assert_eq!(x.to_string(), "1 + sqrt(2)");
    }

    #[test]
    fn circle_crossing() {
        let a = WallCircle { center_b: int(-2), radius_sq: rat(37, 10) };
        let b = WallCircle { center_b: int(-1), radius_sq: rat(7, 10) };
        assert!(!a.meets_in_upper_half(&b));
        let c = WallCircle { center_b: int(0), radius_sq: int(1) };
        let d = WallCircle { center_b: int(1), radius_sq: int(1) };
        assert!(c.meets_in_upper_half(&d));
    }
}
