//! Exact enumeration of lattice points in an ellipsoid.
//!
//! A positive definite form is written as
//! `Q(x) = Σ_i q_i (x_i + Σ_{j>i} μ_ij x_j)²` and points with `Q(x) ≤ bound`
//! are found by depth-first search from the last coordinate down
//! (Fincke–Pohst). Floating point only seeds the integer interval
//! endpoints; every endpoint is then fixed by an exact comparison.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// A positive definite rational quadratic form with its exact LDLᵀ data.
#[derive(Debug, Clone)]
pub struct PositiveForm {
    dim: usize,
    gram: Vec<Vec<Rational>>,
    q: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
    scaled: Option<ScaledForm>,
}

/// `Q(x)·scale = Σ_i weight_i (den_i x_i + Σ_{j>i} num_ij x_j)²`.
#[derive(Debug, Clone)]
struct ScaledForm {
    scale: BigInt,
    weight: Vec<i128>,
    den: Vec<i128>,
    num: Vec<Vec<i128>>,
}

impl ScaledForm {
    fn build(q: &[Rational], mu: &[Vec<Rational>]) -> Option<Self> {
        let n = q.len();
        let mut den = Vec::with_capacity(n);
        let mut num = vec![vec![0i128; n]; n];
        let mut weights: Vec<Rational> = Vec::with_capacity(n);
        for i in 0..n {
            let di = mu[i][i + 1..].iter().fold(BigInt::one(), |l, m| l.lcm(m.denom()));
            for j in i + 1..n {
                num[i][j] = (mu[i][j].numer() * (&di / mu[i][j].denom())).to_i128()?;
            }
            weights.push(&q[i] / Rational::from_integer(&di * &di));
            den.push(di.to_i128()?);
        }
        let scale = weights.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        let weight = weights
            .iter()
            .map(|w| (w.numer() * (&scale / w.denom())).to_i128())
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledForm { scale, weight, den, num })
    }

    /// `None` on overflow.
    fn enumerate(&self, bound: &Rational) -> Option<Vec<Vec<i64>>> {
        let budget = crate::rational::floor_int(&(bound * Rational::from_integer(self.scale.clone()))).to_i128()?;
        let n = self.den.len();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        self.descend(n, budget, &mut x, &mut out)?;
        Some(out)
    }

    fn descend(&self, level: usize, budget: i128, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) -> Option<()> {
        if level == 0 {
            out.push(x.clone());
            return Some(());
        }
        if budget < 0 {
            return Some(());
        }
        let i = level - 1;
        let mut acc = 0i128;
        for j in i + 1..x.len() {
            if x[j] != 0 {
                acc = acc.checked_add(self.num[i][j].checked_mul(x[j] as i128)?)?;
            }
        }
        // weight·K² ≤ budget  ⇔  |K| ≤ kmax
        let kmax = ((budget / self.weight[i]) as u128).sqrt() as i128;
        let den = self.den[i];
        let lo = ceil_div(-kmax - acc, den);
        let hi = floor_div(kmax - acc, den);
        let mut xi = lo;
        while xi <= hi {
            let k = den.checked_mul(xi)?.checked_add(acc)?;
            let used = self.weight[i].checked_mul(k.checked_mul(k)?)?;
            x[i] = i64::try_from(xi).ok()?;
            self.descend(i, budget - used, x, out)?;
            xi += 1;
        }
        x[i] = 0;
        Some(())
    }
}

fn floor_div(a: i128, d: i128) -> i128 {
    Integer::div_floor(&a, &d)
}

fn ceil_div(a: i128, d: i128) -> i128 {
    -floor_div(-a, d)
}

impl PositiveForm {
    /// Fails with a domain error unless `gram` is symmetric positive definite.
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::domain("form matrix is not square"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::domain("form matrix is not symmetric"));
                }
            }
        }
        let mut q: Vec<Rational> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let mut qi = gram[i][i].clone();
            for k in 0..i {
                qi -= &q[k] * &mu[k][i] * &mu[k][i];
            }
            if !qi.is_positive() {
                return Err(Error::domain("form is not positive definite"));
            }
            for j in i + 1..n {
                let mut a = gram[i][j].clone();
                for k in 0..i {
                    a -= &q[k] * &mu[k][i] * &mu[k][j];
                }
                mu[i][j] = a / &qi;
            }
            q.push(qi);
        }
        let scaled = ScaledForm::build(&q, &mu);
        Ok(PositiveForm { dim: n, gram, q, mu, scaled })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.dim {
                if x[j] != 0 {
                    row += &self.gram[i][j] * BigInt::from(x[j]);
                }
            }
            acc += row * BigInt::from(x[i]);
        }
        acc
    }

    /// Every integer vector (the zero vector included) with `Q(x) ≤ bound`,
    /// in a deterministic order.
    pub fn enumerate(&self, bound: &Rational) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if bound.is_negative() {
            return out;
        }
        if let Some(fast) = self.scaled.as_ref().and_then(|f| f.enumerate(bound)) {
            return fast;
        }
        let mut x = vec![0i64; self.dim];
        self.descend(self.dim, bound.clone(), &mut x, &mut out);
        out
    }

    /// The exact rational search, without the integer fast path.
    pub fn enumerate_rational(&self, bound: &Rational) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if bound.is_negative() {
            return out;
        }
        let mut x = vec![0i64; self.dim];
        self.descend(self.dim, bound.clone(), &mut x, &mut out);
        out
    }

    fn descend(&self, level: usize, budget: Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if level == 0 {
            out.push(x.clone());
            return;
        }
        let i = level - 1;
        // center c = -Σ_{j>i} μ_ij x_j ; need q_i (x_i - c)² ≤ budget
        let mut c = Rational::zero();
        for j in i + 1..self.dim {
            if x[j] != 0 {
                c -= &self.mu[i][j] * BigInt::from(x[j]);
            }
        }
        let s2 = &budget / &self.q[i];
        let lo = ceil_minus_sqrt(&c, &s2);
        let hi = floor_plus_sqrt(&c, &s2);
        let mut xi = lo;
        while xi <= hi {
            let diff = Rational::from_integer(BigInt::from(xi)) - &c;
            let used = &self.q[i] * &diff * &diff;
            x[i] = xi;
            self.descend(i, &budget - used, x, out);
            xi += 1;
        }
        x[i] = 0;
    }
}

fn fits_above(m: i64, c: &Rational, s2: &Rational) -> bool {
    // m ≤ c + √s2
    let d = Rational::from_integer(BigInt::from(m)) - c;
    !d.is_positive() || &d * &d <= *s2
}

fn fits_below(m: i64, c: &Rational, s2: &Rational) -> bool {
    // m ≥ c − √s2
    let d = c - Rational::from_integer(BigInt::from(m));
    !d.is_positive() || &d * &d <= *s2
}

/// Largest integer `m ≤ c + √s2`.
fn floor_plus_sqrt(c: &Rational, s2: &Rational) -> i64 {
    let guess = (to_f64(c) + to_f64(s2).sqrt()).floor();
    let mut m = guess.to_i64().unwrap_or(0);
    if fits_above(m, c, s2) {
        while fits_above(m + 1, c, s2) {
            m += 1;
        }
    } else {
        while !fits_above(m, c, s2) {
            m -= 1;
        }
    }
    m
}

/// Smallest integer `m ≥ c − √s2`.
fn ceil_minus_sqrt(c: &Rational, s2: &Rational) -> i64 {
    let guess = (to_f64(c) - to_f64(s2).sqrt()).ceil();
    let mut m = guess.to_i64().unwrap_or(0);
    if fits_below(m, c, s2) {
        while fits_below(m - 1, c, s2) {
            m -= 1;
        }
    } else {
        while !fits_below(m, c, s2) {
            m += 1;
        }
    }
    m
}
