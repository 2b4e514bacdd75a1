//! Walls of the Hilbert scheme of points `Y^[n]` from line bundles `O(−F)`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{wall_locus, ExactRadical, WallCircle, WallLocus};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_bounded_isotropic, GramSpec, IsotropicWitness, NumClass};
use crate::mukai::MukaiVector;
use crate::rational::{floor_sqrt, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertWall {
    pub k: i64,
    #[serde(flatten)]
    pub circle: WallCircle,
    /// `t` where the wall meets `b = −k/(2d)`: `√(2d − k²)/(2d)`.
    pub t0: ExactRadical,
    pub witnesses: Vec<IsotropicWitness>,
}

/// One wall per `k = H.F` with `φ(H) ≤ k ≤ √(2d)`, from `(1, −F, ½)` against
/// `(1, 0, ½ − n)`, outermost first. Witnesses satisfy `H.F = k > 0`.
pub fn hilbert_wall_family(gram: &GramSpec, n: i64, h: &NumClass) -> Result<Vec<HilbertWall>> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n} must be at least 2")));
    }
    let h2 = gram.square(h);
    if h2 <= 0 {
        return Err(Error::domain(format!("H = {h} has H² ≤ 0")));
    }
    let d = h2 / 2;
    let kmax = floor_sqrt(&int(h2)).to_u64().expect("nonnegative");
    let v = MukaiVector::hilbert(n);
    let mut walls: Vec<HilbertWall> = Vec::new();
    for wit in enumerate_bounded_isotropic(gram, h, kmax)? {
        let f = if gram.pair(h, &wit.f) > 0 { wit.f } else { -wit.f };
        let wit = IsotropicWitness { f, pairing_value: wit.pairing_value };
        let k = wit.pairing_value;
        if let Some(last) = walls.last_mut().filter(|w| w.k == k) {
            last.witnesses.push(wit);
            continue;
        }
        let w = MukaiVector::new(1, -f, 1);
        let WallLocus::Circle(circle) = wall_locus(gram, &v, &w, h) else {
            return Err(Error::internal(format!("no wall circle for H.F = {k}")));
        };
        let t0 = ExactRadical::new(Rational::from_integer(0.into()), rat(2 * d - k * k, 4 * d * d));
        walls.push(HilbertWall { k, circle, t0, witnesses: vec![wit] });
    }
    for w in &mut walls {
        w.witnesses.sort_by_key(|x| x.f);
    }
    Ok(walls)
}
