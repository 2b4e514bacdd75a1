//! Moduli-space classification by `(v0², π*v0, m)` and the linear-system
//! report of a polarization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{is_positive, phi, GramSpec, NumClass};
use crate::mukai::{divisibility, mukai_square, pullback_report, MukaiVector};
use crate::stability::half_degree;

/// Dimension of the moduli space, undefined when it is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Value(i64),
    Undefined,
}

/// Codimension of the strictly semistable locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsCodim {
    /// The strictly semistable locus is empty.
    Infinite,
    Exactly(i64),
    GreaterThanOne,
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smooth {
    Yes,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KTrivial {
    Yes,
    No,
    /// Outside `v0² > 0`, where no statement is made.
    NotCovered,
}

/// Lets each enum travel as an integer, a bool or a fixed label.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Bool(bool),
    Label(String),
}

fn bad<E: serde::de::Error>(what: &str) -> E {
    E::custom(format!("unexpected value for {what}"))
}

macro_rules! scalar_serde {
    ($t:ty, $name:literal, $to:expr, $from:expr) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let f: fn(&$t) -> Scalar = $to;
                f(self).serialize(s)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let f: fn(Scalar) -> Option<$t> = $from;
                f(Scalar::deserialize(d)?).ok_or_else(|| bad($name))
            }
        }
    };
}

scalar_serde!(
    Dim,
    "dim",
    |x| match x {
        Dim::Value(n) => Scalar::Int(*n),
        Dim::Undefined => Scalar::Label("undefined".into()),
    },
    |s| match s {
        Scalar::Int(n) => Some(Dim::Value(n)),
        Scalar::Label(l) if l == "undefined" => Some(Dim::Undefined),
        _ => None,
    }
);

scalar_serde!(
    SsCodim,
    "ss_codim",
    |x| match x {
        SsCodim::Infinite => Scalar::Label("infinity".into()),
        SsCodim::Exactly(n) => Scalar::Int(*n),
        SsCodim::GreaterThanOne => Scalar::Label(">1".into()),
        SsCodim::Undefined => Scalar::Label("undefined".into()),
    },
    |s| match s {
        Scalar::Int(n) => Some(SsCodim::Exactly(n)),
        Scalar::Label(l) if l == "infinity" => Some(SsCodim::Infinite),
        Scalar::Label(l) if l == ">1" => Some(SsCodim::GreaterThanOne),
        Scalar::Label(l) if l == "undefined" => Some(SsCodim::Undefined),
        _ => None,
    }
);

scalar_serde!(
    Smooth,
    "smooth",
    |x| match x {
        Smooth::Yes => Scalar::Bool(true),
        Smooth::Unknown => Scalar::Label("unknown".into()),
    },
    |s| match s {
        Scalar::Bool(true) => Some(Smooth::Yes),
        Scalar::Label(l) if l == "unknown" => Some(Smooth::Unknown),
        _ => None,
    }
);

scalar_serde!(
    KTrivial,
    "K_trivial_flag",
    |x| match x {
        KTrivial::Yes => Scalar::Bool(true),
        KTrivial::No => Scalar::Bool(false),
        KTrivial::NotCovered => Scalar::Label("excluded case".into()),
    },
    |s| match s {
        Scalar::Bool(true) => Some(KTrivial::Yes),
        Scalar::Bool(false) => Some(KTrivial::No),
        Scalar::Label(l) if l == "excluded case" => Some(KTrivial::NotCovered),
        _ => None,
    }
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReport {
    pub m: i64,
    pub v0: MukaiVector,
    pub v0_sq: i64,
    pub v_sq: i64,
    pub pullback_primitive: bool,
    pub nonempty: bool,
    pub dim: Dim,
    pub stable_nonempty: bool,
    pub ss_codim: SsCodim,
    pub smooth: Smooth,
    #[serde(rename = "K_trivial_flag")]
    pub k_trivial: KTrivial,
}

/// Moduli of `σ`-semistable objects of class `v = m·v0` for generic `σ`.
pub fn classify_moduli(gram: &GramSpec, v: &MukaiVector) -> Result<ModuliReport> {
    let div = divisibility(v)?;
    let m = div.m;
    let v0_sq = mukai_square(gram, &div.v0);
    let v_sq = m * m * v0_sq;
    let pullback_primitive = pullback_report(gram, &div.v0).divisibility == 1;
    let row = |stable: bool, dim: i64, codim: SsCodim| (true, stable, Dim::Value(dim), codim);
    let (nonempty, stable_nonempty, dim, ss_codim) = match (v0_sq, pullback_primitive, m) {
        (..=-2, _, _) => (false, false, Dim::Undefined, SsCodim::Undefined),
        (-1, _, 1) => row(true, 0, SsCodim::Infinite),
        (-1, _, _) => row(false, 0, SsCodim::Exactly(0)),
        (0, true, 1) => row(true, 1, SsCodim::Infinite),
        (0, true, 2) => row(true, 2, SsCodim::Exactly(0)),
        (0, true, _) => row(false, m, SsCodim::Exactly(0)),
        (0, false, 1) => row(true, 2, SsCodim::Infinite),
        (0, false, _) => row(false, 2 * m, SsCodim::Exactly(0)),
        (1, _, 1) => row(true, v_sq + 1, SsCodim::Infinite),
        (1, _, 2) => row(true, v_sq + 1, SsCodim::Exactly(1)),
        (_, _, _) => row(true, v_sq + 1, SsCodim::GreaterThanOne),
    };
    let smooth = match (m, v0_sq) {
        (1, -1 | 0) => Smooth::Yes,
        (1, x) if x > 0 && x % 8 != 0 => Smooth::Yes,
        _ => Smooth::Unknown,
    };
    let k_trivial = match (v0_sq, m) {
        (1, 2) => KTrivial::No,
        (x, _) if x > 0 => KTrivial::Yes,
        _ => KTrivial::NotCovered,
    };
    Ok(ModuliReport { m, v0: div.v0, v0_sq, v_sq, pullback_primitive, nonempty, dim, stable_nonempty, ss_codim, smooth, k_trivial })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VeryAmple {
    #[serde(rename = "yes")]
    Yes,
    #[serde(rename = "no")]
    No,
    /// `φ = 3` with `d ≠ 5`: not settled by the available argument.
    #[serde(rename = "open (classically yes)")]
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinSysReport {
    pub d: i64,
    pub phi: i64,
    pub bpf: bool,
    pub very_ample: VeryAmple,
    /// Largest certified `n` for `n`-very ampleness, `−1` when none.
    pub n_very_ample_max: i64,
    /// Largest `n ≥ 1` with `n < dφ/(2d − φ)`, or 0.
    pub vanishing_max_n: i64,
}

/// The report for `H² = 2d` and `φ(H) = phi`.
///
/// `H¹(I_Z(H + K)) = 0` for every `Z` of length `n < dφ/(2d − φ)`, and a
/// length `n + 1` subscheme is needed for `n`-very ampleness, so the
/// certified range is one shorter than the vanishing range.
pub fn linsys_from_invariants(d: i64, phi: i64) -> Result<LinSysReport> {
    // φ(H)² ≤ H² for every ample H
    if d < 1 || phi < 1 || phi * phi > 2 * d {
        return Err(Error::domain(format!("no ample class has (d, φ) = ({d}, {phi})")));
    }
    let very_ample = match phi {
        1 | 2 => VeryAmple::No,
        3 if d == 5 => VeryAmple::Yes,
        3 => VeryAmple::Open,
        _ => VeryAmple::Yes,
    };
    // largest integer strictly below dφ/(2d − φ)
    let (num, den) = (d * phi, 2 * d - phi);
    let vanishing_max_n = (num - 1).div_euclid(den);
    Ok(LinSysReport { d, phi, bpf: phi >= 2, very_ample, n_very_ample_max: vanishing_max_n - 1, vanishing_max_n })
}

pub fn linsys_report(gram: &GramSpec, h: &NumClass, h0: &NumClass) -> Result<LinSysReport> {
    if !is_positive(gram, h, h0)? {
        return Err(Error::domain(format!("H = {h} is not ample")));
    }
    linsys_from_invariants(half_degree(gram, h), phi(gram, h)?.value)
}
