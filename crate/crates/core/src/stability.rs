//! Central charges on the slice `σ_{tH,bH}`, slopes, discrepancies, phases.
//!
//! Points of the slice are stored as `(b, u = t²)`. The imaginary part of
//! every charge is `t` times a rational, and only that rational is kept.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GramSpec, NumClass, RationalNumClass};
use crate::mukai::{twist_rational, MukaiVector};
use crate::rational::{format_rational, int, rat, serde_rational, Rational};

/// `(H, b, u)` with `H² > 0`, `H.H0 > 0`, `u > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePoint {
    #[serde(rename = "H")]
    h: NumClass,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(with = "serde_rational")]
    u: Rational,
}

impl SlicePoint {
    pub fn new(gram: &GramSpec, h: NumClass, h0: &NumClass, b: Rational, u: Rational) -> Result<Self> {
        check_direction(gram, &h, h0)?;
        if !u.is_positive() {
            return Err(Error::domain(format!("u = {} must be positive", format_rational(&u))));
        }
        Ok(SlicePoint { h, b, u })
    }

    pub fn h(&self) -> &NumClass {
        &self.h
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }
}

/// `H² > 0` and `H.H0 > 0`.
pub fn check_direction(gram: &GramSpec, h: &NumClass, h0: &NumClass) -> Result<()> {
    if gram.square(h0) <= 0 {
        return Err(Error::config(format!("reference class {h0} has H0² ≤ 0")));
    }
    if gram.square(h) <= 0 || gram.pair(h, h0) <= 0 {
        return Err(Error::domain(format!("H = {h} is not in the positive cone")));
    }
    Ok(())
}

/// `Z = re + i·t·im_over_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    #[serde(with = "serde_rational")]
    pub re: Rational,
    #[serde(with = "serde_rational")]
    pub im_over_t: Rational,
}

impl ChargeValue {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im_over_t.is_zero()
    }
}

/// `d = H²/2`.
pub fn half_degree(gram: &GramSpec, h: &NumClass) -> i64 {
    gram.square(h) / 2
}

/// `(e^{bH + i tH}, v)`.
pub fn central_charge(gram: &GramSpec, v: &MukaiVector, p: &SlicePoint) -> ChargeValue {
    charge_at(gram, v, &p.h, &p.b, &p.u)
}

pub(crate) fn charge_at(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational, u: &Rational) -> ChargeValue {
    let d = int(half_degree(gram, h));
    let ch = int(gram.pair(&v.c, h));
    let r = int(v.r);
    let re = b * &ch - &r * &d * (b * b - u) - v.s();
    let im_over_t = &ch - int(2) * &d * b * &r;
    ChargeValue { re, im_over_t }
}

/// `μ̄ = H.(c − rbH)/r`, or `+∞` for `r = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    PlusInfinity,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{}", format_rational(x)),
            Slope::PlusInfinity => write!(f, "+inf"),
        }
    }
}

/// The slope with the factor `t` stripped.
pub fn slope(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Slope {
    if v.r == 0 {
        return Slope::PlusInfinity;
    }
    Slope::Finite(finite_slope(gram, v, h, b))
}

pub(crate) fn finite_slope(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Rational {
    let c = charge_at(gram, v, h, b, &int(1));
    c.im_over_t / int(v.r)
}

/// `δ = −s_β/r + 1 + μ̄²/(2H²)`; independent of `t`.
pub fn discrepancy(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Result<Rational> {
    if v.r == 0 {
        return Err(Error::domain("discrepancy needs nonzero rank"));
    }
    let r = int(v.r);
    let mu = finite_slope(gram, v, h, b);
    let s_beta = twisted_s(gram, v, h, b);
    Ok(-s_beta / &r + int(1) + &mu * &mu / int(2 * gram.square(h)))
}

/// `s_β = rβ²/2 − c.β + s` for `β = bH`.
pub(crate) fn twisted_s(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Rational {
    let d = int(half_degree(gram, h));
    int(v.r) * b * b * d - b * int(gram.pair(&v.c, h)) + v.s()
}

/// Rotates `Z` into the bucket `Im > 0` or (`Im = 0`, `Re < 0`).
fn bucket(z: &ChargeValue) -> (Rational, Rational) {
    let upper = z.im_over_t.is_positive() || (z.im_over_t.is_zero() && z.re.is_negative());
    if upper {
        (z.re.clone(), z.im_over_t.clone())
    } else {
        (-&z.re, -&z.im_over_t)
    }
}

/// Compares the phases of `Z(v)` and `Z(w)` in `(0, 1]`, after shifting
/// each charge by an integer into that range.
pub fn phase_cmp(gram: &GramSpec, v: &MukaiVector, w: &MukaiVector, p: &SlicePoint) -> Result<Ordering> {
    let zv = central_charge(gram, v, p);
    let zw = central_charge(gram, w, p);
    for (name, z) in [("v", &zv), ("w", &zw)] {
        if z.is_zero() {
            return Err(Error::Hole(format!("Z({name}) = 0 at b = {}, u = {}", format_rational(&p.b), format_rational(&p.u))));
        }
    }
    Ok(compare_bucketed(&zv, &zw))
}

pub(crate) fn compare_bucketed(zv: &ChargeValue, zw: &ChargeValue) -> Ordering {
    let (rv, iv) = bucket(zv);
    let (rw, iw) = bucket(zw);
    // sin(φ_w − φ_v) has the sign of Im(Z_w · conj Z_v)
    let cross = &iw * &rv - &rw * &iv;
    match cross.cmp(&Rational::zero()) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Constant term correction so that the polynomial at `m = 0`, `β = 0`
/// is `χ(v) = −((1,0,½), v) = s + r/2`.
const CHI_SHIFT: (i64, i64) = (1, 2);

/// Coefficients of the twisted Hilbert polynomial `P(m) = m2·m² + m1·m + m0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    #[serde(with = "serde_rational")]
    pub m2: Rational,
    #[serde(with = "serde_rational")]
    pub m1: Rational,
    #[serde(with = "serde_rational")]
    pub m0: Rational,
}

impl HilbertPolynomial {
    pub fn eval(&self, m: &Rational) -> Rational {
        &self.m2 * m * m + &self.m1 * m + &self.m0
    }
}

/// `P(m)` for `ω = H` and `e^{−β}v = (r, c_β, s_β)`:
/// `r ω²/2 · m² + ω.c_β · m + s_β + r/2`.
pub fn twisted_hilbert(gram: &GramSpec, v: &MukaiVector, h: &NumClass, beta: &RationalNumClass) -> HilbertPolynomial {
    let t = twist_rational(gram, &v.to_rational(), beta);
    let h2 = int(gram.square(h));
    HilbertPolynomial {
        m2: &t.r * h2 / int(2),
        m1: gram.pair_mixed(h, &t.c),
        m0: &t.s + &t.r * rat(CHI_SHIFT.0, CHI_SHIFT.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::{mukai_pair, twist};

    fn g() -> GramSpec {
        GramSpec::enriques()
    }

    fn h0() -> NumClass {
        NumClass::from_slice(&[1, 1])
    }

    fn h10() -> NumClass {
        NumClass::from_slice(&[1, 5])
    }

    fn pt(h: NumClass, b: Rational, u: Rational) -> SlicePoint {
        SlicePoint::new(&g(), h, &h0(), b, u).unwrap()
    }

    #[test]
    fn charge_examples() {
        let h = h10();
        for n in 2..5 {
            let z = central_charge(&g(), &MukaiVector::hilbert(n), &pt(h, int(0), rat(3, 7)));
            assert_eq!(z.re, int(5) * rat(3, 7) + int(n) - rat(1, 2));
            assert!(z.im_over_t.is_zero());
        }
        let p = MukaiVector::new(0, NumClass::ZERO, 2);
        let z = central_charge(&g(), &p, &pt(h, rat(-7, 3), rat(1, 9)));
        assert_eq!((z.re, z.im_over_t), (int(-1), int(0)));
        // (1, H, ½ − n + d) with d = 5, n = 2 at b = ½, u = 3/20
        let v = MukaiVector::new(1, h, 1 - 4 + 10);
        let z = central_charge(&g(), &v, &pt(h, rat(1, 2), rat(3, 20)));
        assert_eq!(z.re, int(1));
        assert_eq!(z.im_over_t, int(5));
    }

    #[test]
    fn slice_point_validation() {
        assert!(SlicePoint::new(&g(), h10(), &h0(), int(0), int(0)).is_err());
        assert!(SlicePoint::new(&g(), -h10(), &h0(), int(0), int(1)).is_err());
        let bad_ref = NumClass::from_slice(&[1, 0]);
        assert!(matches!(SlicePoint::new(&g(), h10(), &bad_ref, int(0), int(1)), Err(Error::Config(_))));
    }

    #[test]
    fn slope_examples() {
        let h = h10();
        let v = MukaiVector::new(1, NumClass::ZERO, 7);
        assert_eq!(slope(&g(), &v, &h, &int(-1)), Slope::Finite(int(10)));
        assert_eq!(slope(&g(), &MukaiVector::new(0, h, 0), &h, &int(3)), Slope::PlusInfinity);
        assert_eq!(slope(&g(), &MukaiVector::new(2, h, 0), &h, &int(0)), Slope::Finite(int(5)));
        assert_eq!(slope(&g(), &MukaiVector::new(-1, NumClass::ZERO, 0), &h, &int(1)), Slope::Finite(int(-10)));
    }

    #[test]
    fn discrepancy_examples() {
        let h = h10();
        let o = MukaiVector::new(1, NumClass::ZERO, 1);
        assert_eq!(discrepancy(&g(), &o, &h, &int(0)).unwrap(), rat(1, 2));
        for n in 2..5 {
            assert_eq!(discrepancy(&g(), &MukaiVector::hilbert(n), &h, &int(0)).unwrap(), int(n) + rat(1, 2));
        }
        assert!(discrepancy(&g(), &MukaiVector::new(0, h, 1), &h, &int(0)).is_err());
    }

    #[test]
    fn phase_examples() {
        let h = h10();
        let p = pt(h, rat(1, 3), rat(1, 2));
        let v = MukaiVector::new(1, h, 3);
        let point = MukaiVector::new(0, NumClass::ZERO, 2);
        assert!(central_charge(&g(), &v, &p).im_over_t.is_positive());
        assert_eq!(phase_cmp(&g(), &v, &point, &p).unwrap(), Ordering::Less);
        assert_eq!(phase_cmp(&g(), &point, &v, &p).unwrap(), Ordering::Greater);
        assert_eq!(phase_cmp(&g(), &v, &v, &p).unwrap(), Ordering::Equal);
        // O(−F) with H.F = 1 has Z = 0 at b = −1/10, u = 9/100
        let f = NumClass::from_slice(&[0, 1]);
        let w = MukaiVector::new(1, -f, 1);
        let hole = pt(h, rat(-1, 10), rat(9, 100));
        assert!(matches!(phase_cmp(&g(), &MukaiVector::hilbert(2), &w, &hole), Err(Error::Hole(_))));
    }

    #[test]
    fn hilbert_polynomial_matches_euler_characteristic() {
        let h = h10();
        let o = MukaiVector::new(1, NumClass::ZERO, 1);
        let v_o = o;
        for v in [MukaiVector::new(0, NumClass::ZERO, 2), o, MukaiVector::hilbert(3), MukaiVector::new(2, NumClass::from_slice(&[1, 0, 1]), 4)] {
            let p = twisted_hilbert(&g(), &v, &h, &RationalNumClass::zero());
            for m in -3..4 {
                // χ(v ⊗ O(mH)) = −(v(O), e^{mH} v)
                let chi = -mukai_pair(&g(), &v_o, &twist(&g(), &v, &(m * h)));
                assert_eq!(p.eval(&int(m)), chi, "v = {v}, m = {m}");
            }
        }
        assert_eq!(twisted_hilbert(&g(), &MukaiVector::new(0, NumClass::ZERO, 2), &h, &RationalNumClass::zero()).m0, int(1));
        let p = twisted_hilbert(&g(), &o, &h, &RationalNumClass::zero());
        assert_eq!((p.m2, p.m1), (int(5), int(0)));
    }
}
