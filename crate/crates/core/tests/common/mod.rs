//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's enumeration or closed-form code; only
//! the Gram matrix and the plain data types are reused.
#![allow(dead_code)]

use enriques_stab::lattice::{GramSpec, NumClass, RANK};
use enriques_stab::mukai::MukaiVector;
use enriques_stab::rational::{int, rat, Rational};

pub fn gram() -> GramSpec {
    GramSpec::enriques()
}

pub fn class(head: &[i64]) -> NumClass {
    NumClass::from_slice(head)
}

pub fn h0() -> NumClass {
    class(&[1, 1])
}

/// Twice the Bourbaki simple roots of E8 in the standard coordinates of
/// `D8 ∪ (D8 + ½)`.
pub const E8_ROOTS_X2: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

fn dot8(a: &[i64; 8], b: &[i64; 8]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Doubled standard coordinates of the E8 part of `d`.
pub fn e8_part_x2(d: &NumClass) -> [i64; 8] {
    let mut y = [0i64; 8];
    for (i, root) in E8_ROOTS_X2.iter().enumerate() {
        for k in 0..8 {
            y[k] += d.0[i + 2] * root[k];
        }
    }
    y
}

/// E8 vectors by half-norm `N = |x|²/2`, in doubled coordinates.
#[derive(Default)]
pub struct E8Shells {
    n_max: usize,
    shells: Vec<Vec<[i8; 8]>>,
}

impl E8Shells {
    pub fn shell(&mut self, n: usize) -> &[[i8; 8]] {
        if n > self.n_max || self.shells.is_empty() {
            self.build(n.max(self.n_max + 4).max(8));
        }
        &self.shells[n]
    }

    fn build(&mut self, n_max: usize) {
        self.n_max = n_max;
        self.shells = vec![Vec::new(); n_max + 1];
        let limit = 8 * n_max as i64;
        for parity in 0..2i64 {
            let mut z = [0i64; 8];
            fill(&mut z, 0, parity, 0, limit, &mut self.shells);
        }
    }
}

// z = 2x: all entries even or all odd, Σz ≡ 0 (mod 4), Σz² = 8N
fn fill(z: &mut [i64; 8], i: usize, parity: i64, acc: i64, limit: i64, out: &mut [Vec<[i8; 8]>]) {
    if i == 8 {
        if z.iter().sum::<i64>().rem_euclid(4) == 0 && acc % 8 == 0 {
            out[(acc / 8) as usize].push(z.map(|x| x as i8));
        }
        return;
    }
    let room = limit - acc;
    let mut top = 0;
    while (top + 1) * (top + 1) <= room {
        top += 1;
    }
    let start = if (top - parity).rem_euclid(2) == 0 { -top } else { -top + 1 };
    let mut x = start;
    while x <= top {
        z[i] = x;
        fill(z, i + 1, parity, acc + x * x, limit, out);
        x += 2;
    }
}

/// `min |D.F|` over nonzero isotropic `F`, found by splitting `F = (a, b, x)`
/// with `x ∈ E8`. Isotropy is `ab = N := |x|²/2`, and for `x ≠ 0`
/// `|D.F| ≥ √N·(2√|pq| − √2|y|)`, which bounds the shells to visit.
pub fn phi_oracle(shells: &mut E8Shells, d: &NumClass) -> i64 {
    let (p, q) = (d.0[0], d.0[1]);
    let y2 = e8_part_x2(d);
    let y_norm_x4 = dot8(&y2, &y2);
    assert!(2 * p * q * 4 > y_norm_x4, "oracle needs D² > 0");
    // x = 0 leaves the two U generators
    let mut best = p.abs().min(q.abs());
    let c = 2.0 * ((p * q) as f64).sqrt() - (2.0f64).sqrt() * (y_norm_x4 as f64).sqrt() / 2.0;
    // shells with √N·c ≥ best cannot improve on best
    let beyond = |n: usize, best: i64| (n as f64) * c * c > (best as f64).powi(2) * (1.0 + 1e-9);
    let mut n = 1;
    while !beyond(n, best) {
        let divisors: Vec<i64> = (1..=n as i64).filter(|a| n as i64 % a == 0).collect();
        for z in shells.shell(n) {
            let yx = z.iter().zip(&y2).map(|(a, b)| *a as i64 * b).sum::<i64>() / 4;
            // (a, b, x) and (−a, −b, x) = −(a, b, −x); ±x are both listed
            for &a in &divisors {
                let b = n as i64 / a;
                best = best.min((p * b + q * a - yx).abs());
            }
        }
        n += 1;
    }
    best
}

/// `μ̄(w) = H.(c − rbH)/r` from the definition.
pub fn slope_def(g: &GramSpec, w: &MukaiVector, h: &NumClass, b: &Rational) -> Rational {
    let hc = int(g.pair(h, &w.c));
    let h2 = int(g.square(h));
    (hc - int(w.r) * b * h2) / int(w.r)
}

/// `δ(w) = −s_β/r + 1 + μ̄²/(2H²)` with `s_β = rβ²/2 − c.β + s`, `β = bH`.
pub fn delta_def(g: &GramSpec, w: &MukaiVector, h: &NumClass, b: &Rational) -> Rational {
    let h2 = int(g.square(h));
    let r = int(w.r);
    let s_beta = &r * b * b * &h2 / int(2) - b * int(g.pair(&w.c, h)) + rat(w.s2, 2);
    let mu = slope_def(g, w, h, b);
    -s_beta / &r + int(1) + &mu * &mu / (int(2) * h2)
}

pub fn mukai_square_def(g: &GramSpec, w: &MukaiVector) -> i64 {
    g.square(&w.c) - w.r * w.s2
}

/// Brute-force `D_v`: `c′` over `[−m, m]^10`, `r′ ∈ 1..=r`, `s2′ ∈ s_range`,
/// filtered by the four defining constraints.
pub fn dv_box_scan(g: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational, m: i64, s_range: (i64, i64)) -> Vec<MukaiVector> {
    let mu_v = slope_def(g, v, h, b);
    let delta_v = delta_def(g, v, h, b);
    let gh = g.apply(h);
    let span: i64 = gh.iter().map(|x| x.abs() * m).sum();
    let mut out = Vec::new();
    for rp in 1..=v.r {
        // x = H.c′ ↦ whether 0 < μ̄(w) < μ̄(v)
        let allowed: Vec<bool> = (-span..=span)
            .map(|x| {
                let mu = (int(x) - int(rp) * b * int(g.square(h))) / int(rp);
                mu > int(0) && mu < mu_v
            })
            .collect();
        let mut c = [0i64; RANK];
        scan(&gh, m, span, &allowed, 0, 0, &mut c, &mut |c| {
            let c = NumClass(*c);
            for s2 in s_range.0..=s_range.1 {
                let w = MukaiVector::new(rp, c, s2);
                if mukai_square_def(g, &w) >= -1 && delta_def(g, &w, h, b) < delta_v {
                    out.push(w);
                }
            }
        });
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn scan(gh: &[i64; RANK], m: i64, span: i64, allowed: &[bool], i: usize, x: i64, c: &mut [i64; RANK], hit: &mut impl FnMut(&[i64; RANK])) {
    if i == RANK - 1 {
        for t in -m..=m {
            let xx = x + gh[i] * t;
            if allowed[(xx + span) as usize] {
                c[i] = t;
                hit(c);
            }
        }
        c[i] = 0;
        return;
    }
    for t in -m..=m {
        c[i] = t;
        scan(gh, m, span, allowed, i + 1, x + gh[i] * t, c, hit);
    }
    c[i] = 0;
}

/// `Z(v) = (e^{β + iω}, v)` expanded in the Mukai pairing with `β = bH`,
/// `ω = tH`; returns `(Re Z, Im Z / t)` after substituting `t² = u`.
pub fn charge_def(g: &GramSpec, v: &MukaiVector, h: &NumClass, b: &Rational, u: &Rational) -> (Rational, Rational) {
    // e^{β+iω} = (1, β + iω, (β + iω)²/2)
    let h2 = int(g.square(h));
    let hc = int(g.pair(h, &v.c));
    let (r, s) = (int(v.r), rat(v.s2, 2));
    // (x, v) = x_c.c − x_r s − r x_s
    let re_s = (b * b * &h2 - u * &h2) / int(2);
    let im_s_over_t = b * &h2;
    let re = b * &hc - &s - &r * re_s;
    let im = &hc - &r * im_s_over_t;
    (re, im)
}

/// An integral class `x` in the E8(−1) block with `x² = −2j`, `0 ≤ j ≤ 7`.
pub fn e8_of_norm(j: i64) -> NumClass {
    // e1, e2, e5, e7 are pairwise orthogonal roots; write j as a sum of four squares
    let slots = [2usize, 3, 6, 8];
    for a in 0..3i64 {
        for b in 0..3i64 {
            for c in 0..3i64 {
                for d in 0..3i64 {
                    if a * a + b * b + c * c + d * d == j {
                        let mut x = [0i64; RANK];
                        for (slot, k) in slots.iter().zip([a, b, c, d]) {
                            x[*slot] = k;
                        }
                        return NumClass(x);
                    }
                }
            }
        }
    }
    panic!("no E8 class of norm {j} in this family")
}

/// `H = (k, m, x)` with `H² = 2d`, `H.(0,1) = k` and `m = ⌈d/k⌉ + shift`.
pub fn class_with_degree_shifted(d: i64, k: i64, shift: i64) -> NumClass {
    let m = (d + k - 1) / k + shift;
    let mut h = e8_of_norm(k * m - d);
    h.0[0] = k;
    h.0[1] = m;
    h
}

pub fn class_with_degree(d: i64, k: i64) -> NumClass {
    class_with_degree_shifted(d, k, 0)
}
