//! Isotropic classes of bounded degree and the φ-function.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::class::NumClass;
use super::gram::GramSpec;
use super::shortvec::PositiveForm;
use super::RANK;
use crate::error::{Error, Result};
use crate::rational::{floor_sqrt, int, Rational};

/// A primitive isotropic class `F` together with `|D.F|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsotropicWitness {
    #[serde(rename = "F")]
    pub f: NumClass,
    pub pairing_value: i64,
}

/// Value of φ and a class attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phi {
    pub value: i64,
    pub witness: IsotropicWitness,
}

/// The form `Q′(x) = −x² + (2/D²)(x.D)²`, positive definite when `D² > 0`.
pub fn reflected_form(gram: &GramSpec, d: &NumClass) -> Result<PositiveForm> {
    let d2 = gram.square(d);
    if d2 <= 0 {
        return Err(Error::domain(format!("D² = {d2} is not positive")));
    }
    let g = gram.apply(d);
    let m = gram.matrix();
    let rows = (0..RANK)
        .map(|i| (0..RANK).map(|j| int(-m[i][j]) + Rational::new(BigInt::from(2 * g[i] * g[j]), BigInt::from(d2))).collect())
        .collect();
    PositiveForm::new(rows).map_err(|_| Error::internal("reflected form is not positive definite; Gram signature broken"))
}

/// Every primitive isotropic `F` with `0 < |D.F| ≤ bound`, one per sign pair,
/// sorted by `|D.F|` then by coordinates.
pub fn enumerate_bounded_isotropic(gram: &GramSpec, d: &NumClass, bound: u64) -> Result<Vec<IsotropicWitness>> {
    let d2 = gram.square(d);
    if d2 <= 0 {
        return Err(Error::domain(format!("D² = {d2} is not positive")));
    }
    if bound == 0 {
        return Ok(Vec::new());
    }
    let form = reflected_form(gram, d)?;
    // On F² = 0: Q′(F) = 2(D.F)²/D² ≤ 2B²/D².
    let b = BigInt::from(bound);
    let limit = Rational::new(2 * &b * &b, BigInt::from(d2));
    let mut out: Vec<IsotropicWitness> = form
        .enumerate(&limit)
        .into_iter()
        .filter_map(|x| {
            let f = NumClass(x.try_into().ok()?);
            if f.is_zero() || gram.square(&f) != 0 || !f.is_primitive() {
                return None;
            }
            let p = gram.pair(d, &f).abs();
            if p == 0 || p as u64 > bound || f.sign_normalized() != f {
                return None;
            }
            Some(IsotropicWitness { f, pairing_value: p })
        })
        .collect();
    out.sort_by(|a, b| (a.pairing_value, a.f).cmp(&(b.pairing_value, b.f)));
    Ok(out)
}

/// `φ(D) = min |D.F|` over nonzero isotropic `F`, for `D² > 0`.
pub fn phi(gram: &GramSpec, d: &NumClass) -> Result<Phi> {
    let d2 = gram.square(d);
    if d2 <= 0 {
        return Err(Error::domain(format!("D² = {d2} is not positive")));
    }
    let bound = floor_sqrt(&int(d2)).to_u64().expect("nonnegative square root");
    let slab = enumerate_bounded_isotropic(gram, d, bound)?;
    // sorted by (|D.F|, F): the first entry is the minimum with the
    // lexicographically smallest sign-normalized witness
    let witness = *slab.first().ok_or_else(|| Error::internal("φ bound violated: no isotropic class with |D.F| ≤ √(D²)"))?;
    Ok(Phi { value: witness.pairing_value, witness })
}

fn check_reference(gram: &GramSpec, h0: &NumClass) -> Result<()> {
    if gram.square(h0) <= 0 {
        return Err(Error::config(format!("reference class {h0} has H0² ≤ 0")));
    }
    Ok(())
}

/// `D² > 0` and `D.H0 > 0`.
pub fn is_positive(gram: &GramSpec, d: &NumClass, h0: &NumClass) -> Result<bool> {
    check_reference(gram, h0)?;
    Ok(gram.square(d) > 0 && gram.pair(d, h0) > 0)
}

/// `D² ≥ 0` and `D.H0 ≥ 0`; on an unnodal surface this is the nef cone.
pub fn is_nef_class(gram: &GramSpec, d: &NumClass, h0: &NumClass) -> Result<bool> {
    check_reference(gram, h0)?;
    Ok(gram.square(d) >= 0 && gram.pair(d, h0) >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(head: &[i64]) -> NumClass {
        NumClass::from_slice(head)
    }

    #[test]
    fn slab_examples() {
        let g = GramSpec::enriques();
        let s = enumerate_bounded_isotropic(&g, &c(&[1, 1]), 1).unwrap();
        let fs: Vec<NumClass> = s.iter().map(|w| w.f).collect();
        assert!(fs.contains(&c(&[1, 0])));
        assert!(fs.contains(&c(&[0, 1])));
        assert!(enumerate_bounded_isotropic(&g, &c(&[2, 3]), 1).unwrap().is_empty());
        assert!(enumerate_bounded_isotropic(&g, &c(&[1, 1]), 0).unwrap().is_empty());
        assert!(matches!(enumerate_bounded_isotropic(&g, &c(&[1, -1]), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_examples() {
        let g = GramSpec::enriques();
        let p = phi(&g, &c(&[1, 1])).unwrap();
        assert_eq!(p.value, 1);
        // smallest sign-normalized witness in lexicographic order
        assert_eq!(p.witness.f, c(&[0, 1]));
        let p = phi(&g, &c(&[2, 3])).unwrap();
        assert_eq!((p.value, p.witness.f), (2, c(&[0, 1])));
        for a in 1..=3 {
            assert_eq!(phi(&g, &c(&[a, a])).unwrap().value, a);
        }
        assert!(matches!(phi(&g, &NumClass::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn positivity() {
        let g = GramSpec::enriques();
        let h0 = c(&[1, 1]);
        assert!(is_positive(&g, &h0, &h0).unwrap());
        assert!(is_nef_class(&g, &c(&[1, 0]), &h0).unwrap());
        assert!(!is_positive(&g, &c(&[1, 0]), &h0).unwrap());
        assert!(!is_nef_class(&g, &c(&[1, -1]), &h0).unwrap());
        assert!(matches!(is_positive(&g, &h0, &c(&[1, 0])), Err(Error::Config(_))));
    }
}
