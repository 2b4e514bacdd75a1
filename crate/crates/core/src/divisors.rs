//! Bayer–Macrì vectors and the nef cone of the Hilbert scheme of points.
//!
//! For `σ = σ_{ω,β}` and `v = (r, c, s)` the vector `w_σ ∈ v^⊥` is
//!
//! * `R = c.ω − r β.ω`
//! * `C = (s − β.c + r(β² − ω²)/2) ω + R β`
//! * `S = c.ω (β² − ω²)/2 + s β.ω − (c.β)(β.ω)`
//!
//! Vectors are only meaningful up to a positive scalar, so every result is
//! normalized and the scalar dividing the raw vector is kept alongside.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{is_nef_class, is_positive, phi, GramSpec, IsotropicWitness, NumClass, RationalNumClass};
use crate::mukai::{mukai_pair_rational, MukaiVector, RationalMukaiVector};
use crate::rational::{format_rational, int, rat, serde_rational, Rational};
use crate::stability::half_degree;

/// A Bayer–Macrì vector, normalized so that the first nonzero entry of
/// `(R, C.H0, S)` is `±1`; the raw vector is `scale · (R, C, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmVector {
    #[serde(rename = "R", with = "serde_rational")]
    pub r: Rational,
    #[serde(rename = "C")]
    pub c: RationalNumClass,
    #[serde(rename = "S", with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub scale: Rational,
}

impl BmVector {
    fn normalized(gram: &GramSpec, raw: RationalMukaiVector, h0: &NumClass) -> Self {
        let ch0 = gram.pair_mixed(h0, &raw.c);
        let lead = [&raw.r, &ch0, &raw.s].into_iter().find(|x| !x.is_zero()).map(|x| x.abs());
        let scale = lead.unwrap_or_else(|| int(1));
        let inv = int(1) / &scale;
        BmVector { r: &raw.r * &inv, c: raw.c.scale(&inv), s: &raw.s * &inv, scale }
    }

    pub fn as_mukai(&self) -> RationalMukaiVector {
        RationalMukaiVector { r: self.r.clone(), c: self.c.clone(), s: self.s.clone() }
    }

    /// `R = 0`: the ray is vertical and θ sends it to the `a = 0` face.
    pub fn is_vertical(&self) -> bool {
        self.r.is_zero()
    }
}

fn check_orthogonal(gram: &GramSpec, w: &RationalMukaiVector, v: &MukaiVector) -> Result<()> {
    let residual = mukai_pair_rational(gram, w, &v.to_rational());
    if !residual.is_zero() {
        return Err(Error::internal(format!("Bayer–Macrì vector has (w, v) = {}", format_rational(&residual))));
    }
    Ok(())
}

/// `w_{σ_{ω,β}}` for rational `ω` with `ω² > 0`.
pub fn bm_vector(gram: &GramSpec, v: &MukaiVector, omega: &RationalNumClass, beta: &RationalNumClass, h0: &NumClass) -> Result<BmVector> {
    let w2 = gram.square_rational(omega);
    if !w2.is_positive() {
        return Err(Error::domain(format!("ω² = {} is not positive", format_rational(&w2))));
    }
    let r = int(v.r);
    let s = v.s();
    let c = v.c.to_rational();
    let b2 = gram.square_rational(beta);
    let c_om = gram.pair_rational(&c, omega);
    let c_be = gram.pair_rational(&c, beta);
    let b_om = gram.pair_rational(beta, omega);
    let half_diff = (&b2 - &w2) / int(2);

    let big_r = &c_om - &r * &b_om;
    let coef = &s - &c_be + &r * &half_diff;
    let big_c = &omega.scale(&coef) + &beta.scale(&big_r);
    let big_s = &c_om * &half_diff + &s * &b_om - &c_be * &b_om;
    let raw = RationalMukaiVector { r: big_r, c: big_c, s: big_s };
    check_orthogonal(gram, &raw, v)?;
    Ok(BmVector::normalized(gram, raw, h0))
}

/// `w_{σ_{tH,bH}}/t` in terms of `u = t²`, so irrational `t` is allowed:
/// `(c.H − 2dbr, (s − rd(b² + u))H, d(2bs − c.H(b² + u)))`.
pub fn bm_vector_slice(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational, u: &Rational, h0: &NumClass) -> Result<BmVector> {
    if gram.square(h) <= 0 || !u.is_positive() {
        return Err(Error::domain("the slice needs H² > 0 and u > 0"));
    }
    let d = int(half_degree(gram, h));
    let r = int(v.r);
    let s = v.s();
    let ch = int(gram.pair(&v.c, h));
    let bu = b * b + u;
    let raw = RationalMukaiVector {
        r: &ch - int(2) * &d * b * &r,
        c: RationalNumClass::multiple(&(&s - &r * &d * &bu), h),
        s: &d * (int(2) * b * &s - &ch * &bu),
    };
    check_orthogonal(gram, &raw, v)?;
    Ok(BmVector::normalized(gram, raw, h0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    Zero,
    Infinity,
}

/// Rescaled limits of `w_{σ_{tH,β}}` as `t → 0` (divide by `t`) and
/// `t → ∞` (divide by `t³`).
pub fn bm_limit(gram: &GramSpec, v: &MukaiVector, h: &NumClass, beta: &RationalNumClass, which: Limit, h0: &NumClass) -> Result<BmVector> {
    if gram.square(h) <= 0 {
        return Err(Error::domain(format!("H = {h} has H² ≤ 0")));
    }
    let r = int(v.r);
    let s = v.s();
    let c = v.c.to_rational();
    let h_sq = int(gram.square(h));
    let ch = int(gram.pair(&v.c, h));
    let raw = match which {
        Limit::Infinity => RationalMukaiVector {
            r: Rational::zero(),
            c: RationalNumClass::multiple(&(-&r * &h_sq / int(2)), h),
            s: -&ch * &h_sq / int(2),
        },
        Limit::Zero => {
            let b2 = gram.square_rational(beta);
            let c_be = gram.pair_rational(&c, beta);
            let b_h = gram.pair_mixed(h, beta);
            let big_r = &ch - &r * &b_h;
            let coef = &s - &c_be + &r * &b2 / int(2);
            RationalMukaiVector {
                c: &RationalNumClass::multiple(&coef, h) + &beta.scale(&big_r),
                s: &ch * &b2 / int(2) + &s * &b_h - &c_be * &b_h,
                r: big_r,
            }
        }
    };
    check_orthogonal(gram, &raw, v)?;
    Ok(BmVector::normalized(gram, raw, h0))
}

/// The divisor class `D̃ − aB` on the Hilbert scheme, with `2B` the
/// exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbDivisor {
    #[serde(rename = "D")]
    pub d: RationalNumClass,
    #[serde(with = "serde_rational")]
    pub a: Rational,
}

/// `θ_v(w)` for `v = (1, 0, ½ − n)`, from `θ_v(1, 0, n − ½) = −B` and
/// `θ_v(0, −C, 0) = C̃`.
pub fn theta_hilbert(w: &RationalMukaiVector, n: i64) -> Result<HilbDivisor> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n} must be at least 2")));
    }
    // (w, v) = R(n − ½) − S
    let residual = &w.r * rat(2 * n - 1, 2) - &w.s;
    if !residual.is_zero() {
        return Err(Error::domain(format!("w is not orthogonal to v: (w, v) = {}", format_rational(&residual))));
    }
    Ok(HilbDivisor { d: -&w.c, a: w.r.clone() })
}

/// The first failed condition in the nef test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    /// `D` is not nef on the surface.
    AmpleCone,
    /// `a < 0`.
    NegativeA,
    /// A positive isotropic `F` with `n·a > D.F`.
    Isotropic(IsotropicWitness),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BindingRepr {
    Label(String),
    Witness(IsotropicWitness),
}

impl Serialize for Binding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Binding::AmpleCone => BindingRepr::Label("ample-cone".into()),
            Binding::NegativeA => BindingRepr::Label("a<0".into()),
            Binding::Isotropic(w) => BindingRepr::Witness(*w),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Binding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match BindingRepr::deserialize(d)? {
            BindingRepr::Witness(w) => Ok(Binding::Isotropic(w)),
            BindingRepr::Label(l) if l == "ample-cone" => Ok(Binding::AmpleCone),
            BindingRepr::Label(l) if l == "a<0" => Ok(Binding::NegativeA),
            BindingRepr::Label(l) => Err(serde::de::Error::custom(format!("unknown binding {l:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefVerdict {
    pub nef: bool,
    pub binding: Option<Binding>,
}

fn positive_witness(gram: &GramSpec, f: NumClass, d: &NumClass, h0: &NumClass) -> IsotropicWitness {
    let f = if gram.pair(&f, h0) < 0 { -f } else { f };
    IsotropicWitness { f, pairing_value: gram.pair(d, &f) }
}

/// `D̃ − aB` is nef iff `D` is nef and `0 ≤ n·a ≤ D.F` for every positive
/// isotropic `F`, i.e. `0 ≤ a ≤ φ(D)/n`.
///
/// When `D² = 0` the class `F0 = D/content(D)` is itself isotropic with
/// `D.F0 = 0`, so only `a = 0` survives. For `D = 0` any positive isotropic
/// class plays that role.
pub fn nef_hilbert(gram: &GramSpec, d: &RationalNumClass, a: &Rational, n: i64, h0: &NumClass) -> Result<NefVerdict> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n} must be at least 2")));
    }
    let (di, den) = d.clear_denominators()?;
    if !is_nef_class(gram, &di, h0)? {
        return Ok(NefVerdict { nef: false, binding: Some(Binding::AmpleCone) });
    }
    if a.is_negative() {
        return Ok(NefVerdict { nef: false, binding: Some(Binding::NegativeA) });
    }
    // n·a ≤ D.F  ⇔  n·a·den ≤ D_int.F
    let na = a * int(n) * int(den);
    let witness = if gram.square(&di) > 0 {
        positive_witness(gram, phi(gram, &di)?.witness.f, &di, h0)
    } else if di.is_zero() {
        positive_witness(gram, phi(gram, h0)?.witness.f, &di, h0)
    } else {
        let g = di.content();
        positive_witness(gram, NumClass(di.0.map(|x| x / g)), &di, h0)
    };
    if na > int(witness.pairing_value) {
        return Ok(NefVerdict { nef: false, binding: Some(Binding::Isotropic(witness)) });
    }
    Ok(NefVerdict { nef: true, binding: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallKinds {
    pub hc: String,
    pub flop: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRays {
    pub hc_ray: HilbDivisor,
    pub flop_ray: HilbDivisor,
    pub wall_kinds: WallKinds,
}

/// The two extremal rays `H̃` and `H̃ − (φ(H)/n)B` of the nef cone.
pub fn hilbert_extremal_rays(gram: &GramSpec, h: &NumClass, n: i64, h0: &NumClass) -> Result<HilbertRays> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n} must be at least 2")));
    }
    if !is_positive(gram, h, h0)? {
        return Err(Error::domain(format!("H = {h} is not ample")));
    }
    let p = phi(gram, h)?.value;
    Ok(HilbertRays {
        hc_ray: HilbDivisor { d: h.to_rational(), a: Rational::zero() },
        flop_ray: HilbDivisor { d: h.to_rational(), a: rat(p, n) },
        wall_kinds: WallKinds { hc: "bouncing/divisorial (Hilbert–Chow)".into(), flop: "flopping".into() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::mukai_pair_rational;

    fn g() -> GramSpec {
        GramSpec::enriques()
    }

    fn h10() -> NumClass {
        NumClass::from_slice(&[1, 5])
    }

    fn h0() -> NumClass {
        NumClass::from_slice(&[1, 1])
    }

    fn proportional(x: &RationalMukaiVector, y: &RationalMukaiVector) -> Option<Rational> {
        let xs = std::iter::once(&x.r).chain(x.c.0.iter()).chain(std::iter::once(&x.s));
        let ys: Vec<&Rational> = std::iter::once(&y.r).chain(y.c.0.iter()).chain(std::iter::once(&y.s)).collect();
        let mut k: Option<Rational> = None;
        for (a, b) in xs.zip(ys) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    let q = a / b;
                    if k.as_ref().is_some_and(|k| *k != q) {
                        return None;
                    }
                    k = Some(q);
                }
                _ => return None,
            }
        }
        k
    }

    #[test]
    fn hilbert_wall_point_vector() {
        // ω = t₀H, β = −(k/2d)H lands on (1, −(n/k)H, n − ½)
        let h = h10();
        for n in 2..5 {
            for k in 1..=3i64 {
                let v = MukaiVector::hilbert(n);
                let b = rat(-k, 10);
                let u = rat(10 - k * k, 100);
                let w = bm_vector_slice(&g(), &v, &h, &b, &u, &h0()).unwrap();
                let target = RationalMukaiVector { r: int(1), c: RationalNumClass::multiple(&rat(-n, k), &h), s: rat(2 * n - 1, 2) };
                let ratio = proportional(&w.as_mukai(), &target).unwrap();
                assert!(ratio.is_positive());
            }
        }
    }

    #[test]
    fn slice_matches_general_formula_at_rational_t() {
        let v = MukaiVector::new(2, NumClass::from_slice(&[1, 0, 1]), -3);
        let h = h10();
        for (b, t) in [(rat(-1, 3), rat(1, 2)), (rat(2, 7), rat(5, 3)), (int(0), int(1))] {
            let omega = RationalNumClass::multiple(&t, &h);
            let beta = RationalNumClass::multiple(&b, &h);
            let full = bm_vector(&g(), &v, &omega, &beta, &h0()).unwrap();
            let slice = bm_vector_slice(&g(), &v, &h, &b, &(&t * &t), &h0()).unwrap();
            assert_eq!((&full.r, &full.c, &full.s), (&slice.r, &slice.c, &slice.s));
            assert_eq!(full.scale, &slice.scale * &t);
        }
    }

    #[test]
    fn general_vector_is_orthogonal() {
        let v = MukaiVector::new(3, NumClass::from_slice(&[1, -2, 0, 1]), 5);
        let omega = RationalNumClass([rat(1, 2), int(3), rat(1, 5), int(0), int(0), int(0), int(0), int(0), int(0), int(0)]);
        let beta = RationalNumClass([rat(-1, 3), int(1), int(0), rat(2, 7), int(0), int(0), int(0), int(0), int(0), int(1)]);
        let w = bm_vector(&g(), &v, &omega, &beta, &h0()).unwrap();
        assert!(mukai_pair_rational(&g(), &w.as_mukai(), &v.to_rational()).is_zero());
        assert!(w.scale.is_positive());
        let bad = RationalNumClass::multiple(&int(1), &NumClass::from_slice(&[1, -1]));
        assert!(matches!(bm_vector(&g(), &v, &bad, &beta, &h0()), Err(Error::Domain(_))));
    }

    #[test]
    fn vertical_ray_at_zero_beta() {
        let v = MukaiVector::hilbert(3);
        let omega = RationalNumClass::multiple(&int(2), &h10());
        let w = bm_vector(&g(), &v, &omega, &RationalNumClass::zero(), &h0()).unwrap();
        assert!(w.is_vertical());
    }

    #[test]
    fn limits() {
        let h = h10();
        let v = MukaiVector::hilbert(3);
        let inf = bm_limit(&g(), &v, &h, &RationalNumClass::multiple(&rat(-1, 5), &h), Limit::Infinity, &h0()).unwrap();
        // raw (0, −5H, 0); normalized by |C.H0| = 30
        assert!(inf.r.is_zero() && inf.s.is_zero());
        assert_eq!(inf.c, RationalNumClass::multiple(&rat(-1, 6), &h));
        assert_eq!(inf.scale, int(30));
        let zero = bm_limit(&g(), &v, &h, &RationalNumClass::zero(), Limit::Zero, &h0()).unwrap();
        // raw (0, (½ − n)H, 0)
        assert_eq!(zero.c.scale(&zero.scale), RationalNumClass::multiple(&rat(-5, 2), &h));
        let general = MukaiVector::new(2, NumClass::from_slice(&[0, 1, 1]), 1);
        let r = bm_limit(&g(), &general, &h, &RationalNumClass::multiple(&int(1), &h0()), Limit::Infinity, &h0()).unwrap();
        assert!(r.r.is_zero());
    }

    #[test]
    fn theta_examples() {
        let n = 3;
        let h = h10();
        let w = RationalMukaiVector { r: int(1), c: RationalNumClass::multiple(&rat(-3, 2), &h), s: rat(5, 2) };
        let t = theta_hilbert(&w, n).unwrap();
        assert_eq!((t.d, t.a), (RationalNumClass::multiple(&rat(3, 2), &h), int(1)));
        let hc = RationalMukaiVector { r: int(0), c: RationalNumClass::multiple(&int(-1), &h), s: int(0) };
        assert_eq!(theta_hilbert(&hc, n).unwrap(), HilbDivisor { d: h.to_rational(), a: int(0) });
        let b = RationalMukaiVector { r: int(1), c: RationalNumClass::zero(), s: rat(5, 2) };
        assert_eq!(theta_hilbert(&b, n).unwrap(), HilbDivisor { d: RationalNumClass::zero(), a: int(1) });
        let off = RationalMukaiVector { r: int(1), c: RationalNumClass::zero(), s: int(0) };
        assert!(matches!(theta_hilbert(&off, n), Err(Error::Domain(_))));
    }

    #[test]
    fn nef_examples() {
        let d = h10().to_rational();
        let v = nef_hilbert(&g(), &d, &rat(1, 2), 2, &h0()).unwrap();
        assert_eq!(v, NefVerdict { nef: true, binding: None });
        let v = nef_hilbert(&g(), &d, &(rat(1, 2) + rat(1, 100)), 2, &h0()).unwrap();
        let Some(Binding::Isotropic(w)) = v.binding else { panic!("{v:?}") };
        assert!(!v.nef);
        assert_eq!((w.f, w.pairing_value), (NumClass::from_slice(&[0, 1]), 1));
        let bad = NumClass::from_slice(&[1, -1]).to_rational();
        assert_eq!(nef_hilbert(&g(), &bad, &int(0), 2, &h0()).unwrap().binding, Some(Binding::AmpleCone));
        assert_eq!(nef_hilbert(&g(), &d, &rat(-1, 3), 2, &h0()).unwrap().binding, Some(Binding::NegativeA));
    }

    #[test]
    fn nef_on_isotropic_and_zero_classes() {
        let f = NumClass::from_slice(&[0, 2]).to_rational();
        assert!(nef_hilbert(&g(), &f, &int(0), 3, &h0()).unwrap().nef);
        assert!(!nef_hilbert(&g(), &f, &rat(1, 1000), 3, &h0()).unwrap().nef);
        assert!(nef_hilbert(&g(), &RationalNumClass::zero(), &int(0), 3, &h0()).unwrap().nef);
        assert!(!nef_hilbert(&g(), &RationalNumClass::zero(), &rat(1, 7), 3, &h0()).unwrap().nef);
    }

    #[test]
    fn binding_json() {
        for b in [
            Binding::AmpleCone,
            Binding::NegativeA,
            Binding::Isotropic(IsotropicWitness { f: NumClass::from_slice(&[0, 1]), pairing_value: 1 }),
        ] {
            let v = NefVerdict { nef: false, binding: Some(b) };
            let text = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<NefVerdict>(&text).unwrap(), v);
        }
        assert!(serde_json::to_string(&Binding::NegativeA).unwrap().contains("a<0"));
    }

    #[test]
    fn rays() {
        let r = hilbert_extremal_rays(&g(), &h10(), 2, &h0()).unwrap();
        assert_eq!(r.hc_ray.a, int(0));
        assert_eq!(r.flop_ray.a, rat(1, 2));
        assert_eq!(hilbert_extremal_rays(&g(), &h10(), 4, &h0()).unwrap().flop_ray.a, rat(1, 4));
        assert!(hilbert_extremal_rays(&g(), &NumClass::from_slice(&[1, -1]), 2, &h0()).is_err());
    }
}
