//! The destabilizer set `D_v`, `μ^max` and the Gieseker-chamber bound.
//!
//! Write `x = H.c′`, `μ̄(w) = x/r′ − 2db`. For fixed `(r′, x)`:
//!
//! * `δ(w) < δ(v)` ⇔ `s′ > L := r′(1 − δ(v) + μ̄(w)²/(4d) − b²d) + b·x`;
//! * `w² ≥ −1` ⇔ `s′ ≤ U := (c′² + 1)/(2r′)`;
//! * `L < U` ⇔ `Q′(c′) < x²/d − 2r′L + 1` where `Q′(c′) = −c′² + x²/d` is
//!   the positive definite form reflected in `H`.
//!
//! So `c′` ranges over an ellipsoid of `Q′` and `s′` over `(L, U]`.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::ExactRadical;
use crate::error::{Error, Result};
use crate::lattice::{reflected_form, GramSpec, NumClass};
use crate::mukai::MukaiVector;
use crate::rational::{ceil_int, floor_int, int, rat, serde_rational, to_i64, Rational};
use crate::stability::{discrepancy, finite_slope, half_degree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Destabilizer {
    pub w: MukaiVector,
    #[serde(with = "serde_rational")]
    pub mu: Rational,
    #[serde(with = "serde_rational")]
    pub delta: Rational,
}

fn check_input(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Result<Rational> {
    if gram.square(h) <= 0 {
        return Err(Error::domain(format!("H = {h} has H² ≤ 0")));
    }
    if v.r <= 0 {
        return Err(Error::domain(format!("rank {} is not positive", v.r)));
    }
    let mu = finite_slope(gram, v, h, b);
    if !mu.is_positive() {
        return Err(Error::domain(format!("slope {mu} is not positive")));
    }
    Ok(mu)
}

/// All `w` with `0 < r′ ≤ r`, `w² ≥ −1`, `0 < μ̄(w) < μ̄(v)`, `δ(w) < δ(v)`,
/// sorted by `(r′, μ̄, δ)` and then by `w`.
pub fn enumerate_dv(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Result<Vec<Destabilizer>> {
    let mu_v = check_input(gram, v, h, b)?;
    let delta_v = discrepancy(gram, v, h, b)?;
    let d = int(half_degree(gram, h));
    let two_db = int(2) * &d * b;

    // (r′, x) ↦ (L, threshold on Q′)
    let mut windows: Vec<(i64, i64, Rational, Rational)> = Vec::new();
    for rp in 1..=v.r {
        let r = int(rp);
        let lo = to_i64(&floor_int(&(&r * &two_db)))? + 1;
        let hi = to_i64(&ceil_int(&(&r * (&two_db + &mu_v))))? - 1;
        for x in lo..=hi {
            let xq = int(x);
            let mu_w = &xq / &r - &two_db;
            let l = &r * (int(1) - &delta_v + &mu_w * &mu_w / (int(4) * &d) - b * b * &d) + b * &xq;
            let thr = &xq * &xq / &d - int(2) * &r * &l + int(1);
            windows.push((rp, x, l, thr));
        }
    }
    let Some(max_thr) = windows.iter().map(|w| w.3.clone()).max() else {
        return Ok(Vec::new());
    };
    if !max_thr.is_positive() {
        return Ok(Vec::new());
    }

    let form = reflected_form(gram, h)?;
    let mut by_x: BTreeMap<i64, Vec<(NumClass, Rational)>> = BTreeMap::new();
    for pt in form.enumerate(&max_thr) {
        let c = NumClass(pt.try_into().expect("rank-10 point"));
        let q = form.eval(&c.0);
        by_x.entry(gram.pair(h, &c)).or_default().push((c, q));
    }

    // δ(w) = δ(v) + (L − s′)/r′ and μ̄(w) depend only on the window and s′
    let mut out = Vec::new();
    for (rp, x, l, thr) in &windows {
        let Some(cands) = by_x.get(x) else { continue };
        let r = int(*rp);
        let mu = int(*x) / &r - &two_db;
        for (c, q) in cands {
            if q >= thr {
                continue;
            }
            let c2 = gram.square(c);
            // s2′ ∈ (2L, 2U] with 2U = (c′² + 1)/r′
            let s_lo = to_i64(&floor_int(&(int(2) * l)))? + 1;
            let s_hi = to_i64(&floor_int(&rat(c2 + 1, *rp)))?;
            for s2 in s_lo..=s_hi {
                let w = MukaiVector::new(*rp, *c, s2);
                let delta = &delta_v + (l - rat(s2, 2)) / &r;
                out.push(Destabilizer { w, mu: mu.clone(), delta });
            }
        }
    }
    out.sort_by(|a, b| (a.w.r, &a.mu, &a.delta, a.w).cmp(&(b.w.r, &b.mu, &b.delta, b.w)));
    Ok(out)
}

/// `max({μ̄(w) : w ∈ D_v} ∪ {r/(r+1)·μ̄(v)})`.
pub fn mu_max(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Result<Rational> {
    let mu_v = check_input(gram, v, h, b)?;
    let base = rat(v.r, v.r + 1) * &mu_v;
    let dv = enumerate_dv(gram, v, h, b)?;
    Ok(dv.into_iter().map(|w| w.mu).fold(base, |m, x| if x > m { x } else { m }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GiesekerVariant {
    /// Comparison point `z = iμ^max + ω²/2 − 1 − (μ^max)²/(2ω²)`.
    #[default]
    Standard,
    /// The same `z` shifted by `+½`, using `δ(w) ≥ ½`.
    Sharpened,
}

/// Threshold on `ω² = 2du` above which every twisted Gieseker-stable `E`
/// of class `v` is stable on the slice.
pub fn gieseker_bound(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational) -> Result<ExactRadical> {
    gieseker_bound_with(gram, v, h, b, GiesekerVariant::Standard)
}

/// With `μ = tμ̄`, `μ^max = tμ̄^max` and `X = ω²`, the comparison
/// `Re (μ/μ^max)·z > Re Z(v)/r` is `X² − 2AX + κX > 0`, where
/// `κ = μ̄ μ̄^max/(2d)` (so that `μ μ^max = κX`). Its threshold `2A − κ`
/// equals `A + √((A − κ)²)` when `A ≥ κ`, i.e. the fixed point of
/// `X = A + √(A² − μ μ^max)`. The result is floored at `ω² = 1`, below which
/// the slice is not known to consist of stability conditions.
pub fn gieseker_bound_with(gram: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational, variant: GiesekerVariant) -> Result<ExactRadical> {
    let mu = check_input(gram, v, h, b)?;
    let mmax = mu_max(gram, v, h, b)?;
    if mmax >= mu {
        return Err(Error::domain("degenerate input: μ^max ≥ μ"));
    }
    let delta = discrepancy(gram, v, h, b)?;
    let ratio = &mmax / (&mu - &mmax);
    let a = match variant {
        GiesekerVariant::Standard => int(1) + &ratio * &delta,
        GiesekerVariant::Sharpened => rat(1, 2) + &ratio * (&delta - rat(1, 2)),
    };
    let kappa = &mu * &mmax / int(2 * half_degree(gram, h));
    let threshold = int(2) * &a - &kappa;
    if threshold <= int(1) {
        return Ok(ExactRadical::rational(int(1)));
    }
    if a >= kappa {
        let gap = &a - &kappa;
        Ok(ExactRadical::new(a, &gap * &gap))
    } else {
        Ok(ExactRadical::rational(threshold))
    }
}

/// `A + √(A² − μ^max·μ)` with `A = 1 + μ^max δ/(μ − μ^max)`, for given
/// `ω`-inclusive slopes.
pub fn gieseker_formula(mu: &Rational, mu_max: &Rational, delta: &Rational) -> Result<ExactRadical> {
    if mu_max >= mu {
        return Err(Error::domain("degenerate input: μ^max ≥ μ"));
    }
    let a = int(1) + mu_max / (mu - mu_max) * delta;
    let rad = &a * &a - mu_max * mu;
    if rad.is_negative() {
        return Err(Error::domain("negative radicand"));
    }
    Ok(ExactRadical::new(a, rad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walls::{wall_locus, WallLocus};
    use std::cmp::Ordering;

    fn g() -> GramSpec {
        GramSpec::enriques()
    }

    fn h10() -> NumClass {
        NumClass::from_slice(&[1, 5])
    }

    #[test]
    fn hilbert_vector_at_small_b_has_empty_dv() {
        let v = MukaiVector::hilbert(2);
        let b = rat(-1, 10);
        assert!(enumerate_dv(&g(), &v, &h10(), &b).unwrap().is_empty());
        assert_eq!(mu_max(&g(), &v, &h10(), &b).unwrap(), rat(1, 2));
    }

    fn assert_members(v: &MukaiVector, b: &Rational) -> usize {
        let h = h10();
        let dv = enumerate_dv(&g(), v, &h, b).unwrap();
        let mu_v = finite_slope(&g(), v, &h, b);
        let delta_v = discrepancy(&g(), v, &h, b).unwrap();
        for w in &dv {
            assert_eq!(w.mu, finite_slope(&g(), &w.w, &h, b));
            assert_eq!(w.delta, discrepancy(&g(), &w.w, &h, b).unwrap());
            assert!(crate::mukai::mukai_square(&g(), &w.w) >= -1);
            assert!(w.w.r >= 1 && w.w.r <= v.r);
            assert!(w.mu.is_positive() && w.mu < mu_v && w.delta < delta_v);
        }
        dv.len()
    }

    #[test]
    fn members_satisfy_constraints() {
        assert!(assert_members(&MukaiVector::hilbert(3), &rat(-7, 10)) > 0);
        assert!(assert_members(&MukaiVector::new(2, NumClass::from_slice(&[0, 1]), -1), &rat(-1, 5)) > 0);
    }

    #[test]
    fn rejects_bad_input() {
        let v = MukaiVector::hilbert(2);
        assert!(enumerate_dv(&g(), &v, &h10(), &int(1)).is_err());
        assert!(enumerate_dv(&g(), &MukaiVector::new(0, h10(), 0), &h10(), &int(0)).is_err());
    }

    #[test]
    fn bound_example_matches_literal_formula() {
        // r = 1 and D_v empty, so μ^max = μ/2 and A = 1 + δ
        let v = MukaiVector::hilbert(2);
        let h = h10();
        let b = rat(-1, 10);
        let bound = gieseker_bound(&g(), &v, &h, &b).unwrap();
        let delta = discrepancy(&g(), &v, &h, &b).unwrap();
        let mu_bar = finite_slope(&g(), &v, &h, &b);
        assert_eq!(bound.a, int(1) + &delta);
        // at the threshold X = ω², μ² = μ̄²X/(2d) and X = A + √(A² − μ²/2)
        let x = int(2) * &bound.a - &mu_bar * &mu_bar / int(2) / int(10);
        let mu_sq = &mu_bar * &mu_bar * &x / int(10);
        assert_eq!(bound.rad, (int(1) + &delta) * (int(1) + &delta) - &mu_sq / int(2));
        assert_eq!(bound.cmp_rational(&x), Ordering::Equal);
    }

    #[test]
    fn literal_formula() {
        let f = gieseker_formula(&int(2), &int(1), &int(3)).unwrap();
        assert_eq!((f.a, f.rad), (int(4), int(14)));
        assert!(gieseker_formula(&int(1), &int(1), &int(3)).is_err());
    }

    #[test]
    fn bound_dominates_hilbert_wall() {
        let v = MukaiVector::hilbert(2);
        let h = h10();
        let b = rat(-1, 10);
        let bound = gieseker_bound(&g(), &v, &h, &b).unwrap();
        let w = MukaiVector::new(1, -NumClass::from_slice(&[0, 1]), 1);
        let WallLocus::Circle(c) = wall_locus(&g(), &v, &w, &h) else { panic!() };
        let u = c.u_at(&b);
        assert_eq!(bound.cmp_rational(&(int(10) * u)), Ordering::Greater);
    }

    #[test]
    fn sharpened_bound_is_smaller() {
        let v = MukaiVector::new(2, NumClass::from_slice(&[0, 1]), -1);
        let h = h10();
        let b = rat(-1, 5);
        let std = gieseker_bound(&g(), &v, &h, &b).unwrap();
        let sharp = gieseker_bound_with(&g(), &v, &h, &b, GiesekerVariant::Sharpened).unwrap();
        assert!(sharp.to_f64() <= std.to_f64());
    }
}
