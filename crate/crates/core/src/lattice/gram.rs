//! The intersection form on Num(Y) and its validator.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::class::{NumClass, RationalNumClass};
use super::RANK;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Edges of the E8 Dynkin diagram in Bourbaki numbering (1-based).
const E8_EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

/// A validated even unimodular Gram matrix of signature (1, 9).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GramJson", into = "GramJson")]
pub struct GramSpec {
    name: String,
    gram: [[i64; RANK]; RANK],
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    name: String,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<GramJson> for GramSpec {
    type Error = Error;
    fn try_from(j: GramJson) -> Result<Self> {
        if j.gram.len() != RANK || j.gram.iter().any(|row| row.len() != RANK) {
            return Err(Error::config(format!("gram matrix must be {RANK}x{RANK}")));
        }
        let mut gram = [[0i64; RANK]; RANK];
        for (i, row) in j.gram.iter().enumerate() {
            gram[i].copy_from_slice(row);
        }
        GramSpec::new(j.name, gram)
    }
}

impl From<GramSpec> for GramJson {
    fn from(g: GramSpec) -> Self {
        GramJson { name: g.name, gram: g.gram.iter().map(|r| r.to_vec()).collect() }
    }
}

impl Default for GramSpec {
    fn default() -> Self {
        Self::enriques()
    }
}

impl GramSpec {
    /// Validates symmetry, evenness, unimodularity and signature (1, 9).
    pub fn new(name: impl Into<String>, gram: [[i64; RANK]; RANK]) -> Result<Self> {
        for i in 0..RANK {
            if gram[i][i] % 2 != 0 {
                return Err(Error::config(format!("diagonal entry {i} is odd")));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::config(format!("not symmetric at ({i},{j})")));
                }
            }
        }
        let pivots = congruence_diagonal(&gram);
        let det: Rational = pivots.iter().product();
        if det != int(1) && det != int(-1) {
            return Err(Error::config(format!("determinant {det} is not a unit")));
        }
        let pos = pivots.iter().filter(|p| p.is_positive()).count();
        let neg = pivots.iter().filter(|p| p.is_negative()).count();
        if (pos, neg) != (1, RANK - 1) {
            return Err(Error::config(format!("signature ({pos},{neg}) differs from (1,{})", RANK - 1)));
        }
        Ok(GramSpec { name: name.into(), gram })
    }

    /// U ⊕ E8(−1), basis (u1, u2, e1, ..., e8), E8 in Bourbaki numbering.
    pub fn enriques() -> Self {
        let mut g = [[0i64; RANK]; RANK];
        g[0][1] = 1;
        g[1][0] = 1;
        for i in 2..RANK {
            g[i][i] = -2;
        }
        for &(a, b) in &E8_EDGES {
            g[a + 1][b + 1] = 1;
            g[b + 1][a + 1] = 1;
        }
        GramSpec { name: "U+E8(-1)".into(), gram: g }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &[[i64; RANK]; RANK] {
        &self.gram
    }

    /// `G x` as integers.
    pub fn apply(&self, x: &NumClass) -> [i64; RANK] {
        std::array::from_fn(|i| (0..RANK).map(|j| self.gram[i][j] * x.0[j]).sum())
    }

    pub fn pair(&self, x: &NumClass, y: &NumClass) -> i64 {
        let gy = self.apply(y);
        x.0.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn square(&self, x: &NumClass) -> i64 {
        self.pair(x, x)
    }

    pub fn pair_mixed(&self, x: &NumClass, y: &RationalNumClass) -> Rational {
        let gx = self.apply(x);
        gx.iter().zip(y.0.iter()).map(|(a, b)| b * int(*a)).sum()
    }

    pub fn pair_rational(&self, x: &RationalNumClass, y: &RationalNumClass) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..RANK {
            if x.0[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..RANK {
                if self.gram[i][j] != 0 && !y.0[j].is_zero() {
                    row += &y.0[j] * int(self.gram[i][j]);
                }
            }
            acc += &x.0[i] * row;
        }
        acc
    }

    pub fn square_rational(&self, x: &RationalNumClass) -> Rational {
        self.pair_rational(x, x)
    }

    /// Gram matrix transported by an integer basis change: `Tᵀ G T`.
    pub fn transported(&self, t: &[[i64; RANK]; RANK]) -> Result<Self> {
        let mut g = [[0i64; RANK]; RANK];
        for i in 0..RANK {
            for j in 0..RANK {
                let mut acc = 0i64;
                for k in 0..RANK {
                    for l in 0..RANK {
                        acc += t[k][i] * self.gram[k][l] * t[l][j];
                    }
                }
                g[i][j] = acc;
            }
        }
        GramSpec::new(format!("{}-transported", self.name), g)
    }
}

/// Exact congruence diagonalization; returns the diagonal entries.
fn congruence_diagonal(gram: &[[i64; RANK]; RANK]) -> Vec<Rational> {
    let mut a: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let n = RANK;
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a[k][k] = 0 = a[j][j], a[k][j] != 0: add row/column j to k.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let p = a[k][k].clone();
        if p.is_zero() {
            pivots.push(p);
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        pivots.push(p);
    }
    pivots
}
