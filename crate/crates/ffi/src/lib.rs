//! C ABI over `enriques_stab`.
//!
//! Conventions:
//!
//! * every call returns an [`EsStatus`]; results go through out-pointers;
//! * on failure `es_last_error()` returns a message owned by the caller
//!   (free it with `es_string_free`);
//! * rationals cross the boundary as `int64` pairs and fail with
//!   `ES_DOMAIN` if they do not fit;
//! * handles (`EsLattice`, `EsHilbertWalls`) are opaque and freed by their
//!   own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use enriques_stab::cli::config::CliConfig;
use enriques_stab::divisors::{nef_hilbert, Binding};
use enriques_stab::lattice::{phi, NumClass, RationalNumClass, RANK};
use enriques_stab::mukai::{mukai_pair, MukaiVector};
use enriques_stab::rational::{int, rat, to_i64, Rational};
use enriques_stab::reports::{classify_moduli, linsys_report, Dim, KTrivial, Smooth, SsCodim, VeryAmple};
use enriques_stab::stability::{central_charge, phase_cmp, SlicePoint};
use enriques_stab::walls::{hilbert_wall_family, wall_locus, HilbertWall, WallLocus};
use enriques_stab::Error;

/// Number of coordinates of a class.
pub const ES_RANK: usize = 10;
const _: () = assert!(ES_RANK == RANK);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    Parse = 1,
    Domain = 2,
    Config = 3,
    Internal = 4,
    /// A central charge vanishes at the queried point.
    Hole = 5,
    NullArgument = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: Error) -> EsStatus {
    let s = match &e {
        Error::Parse(_) => EsStatus::Parse,
        Error::Domain(_) => EsStatus::Domain,
        Error::Hole(_) => EsStatus::Hole,
        Error::Config(_) => EsStatus::Config,
        Error::Internal(_) => EsStatus::Internal,
    };
    set_error(e.to_string());
    s
}

/// Runs `f`, translating errors, null pointers and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), EsStatus>) -> EsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside enriques_stab".into());
            EsStatus::Panic
        }
    }
}

fn lift<T>(r: enriques_stab::Result<T>) -> Result<T, EsStatus> {
    r.map_err(status_of)
}

unsafe fn arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, EsStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{name} is NULL"));
        EsStatus::NullArgument
    })
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, EsStatus> {
    p.as_mut().ok_or_else(|| {
        set_error(format!("{name} is NULL"));
        EsStatus::NullArgument
    })
}

/// The Gram form together with the reference ample class.
pub struct EsLattice {
    cfg: CliConfig,
}

/// `p/q` with `q > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsRational {
    pub num: i64,
    pub den: i64,
}

impl EsRational {
    fn to_rational(self) -> Result<Rational, EsStatus> {
        if self.den == 0 {
            return Err(status_of(Error::Parse("zero denominator".into())));
        }
        Ok(rat(self.num, self.den))
    }

    fn from_rational(x: &Rational) -> Result<Self, EsStatus> {
        Ok(EsRational { num: lift(to_i64(x.numer()))?, den: lift(to_i64(x.denom()))? })
    }
}

/// A Mukai vector `(r, c, s2/2)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsMukai {
    pub r: i64,
    pub c: [i64; ES_RANK],
    pub s2: i64,
}

impl From<&EsMukai> for MukaiVector {
    fn from(m: &EsMukai) -> Self {
        MukaiVector::new(m.r, NumClass(m.c), m.s2)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsPhi {
    pub value: i64,
    pub witness: [i64; ES_RANK],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsWallKind {
    Circle = 0,
    VerticalLine = 1,
    Everywhere = 2,
    Nowhere = 3,
}

/// `center_b` and `radius_sq` are set for circles, `b` for vertical lines.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsWallLocus {
    pub kind: EsWallKind,
    pub center_b: EsRational,
    pub radius_sq: EsRational,
    pub b: EsRational,
}

/// One wall of the Hilbert scheme; `t0 = t0_a + sqrt(t0_rad)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsHilbertWall {
    pub k: i64,
    pub center_b: EsRational,
    pub radius_sq: EsRational,
    pub t0_a: EsRational,
    pub t0_rad: EsRational,
    pub witness_count: usize,
}

pub struct EsHilbertWalls {
    walls: Vec<HilbertWall>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsBinding {
    None = 0,
    AmpleCone = 1,
    NegativeA = 2,
    Isotropic = 3,
}

/// `witness` and `pairing_value` are set when `binding` is `Isotropic`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsNefResult {
    pub nef: bool,
    pub binding: EsBinding,
    pub witness: [i64; ES_RANK],
    pub pairing_value: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsVeryAmple {
    No = 0,
    Yes = 1,
    Open = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsLinSys {
    pub d: i64,
    pub phi: i64,
    pub bpf: bool,
    pub very_ample: EsVeryAmple,
    pub n_very_ample_max: i64,
    pub vanishing_max_n: i64,
}

/// Sentinels: `dim = -1` undefined; `ss_codim` is `-1` infinite, `-2` for
/// "greater than one", `-3` undefined; `smooth` is `1` or `-1` unknown;
/// `k_trivial` is `1`, `0`, or `-1` outside the covered range.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsModuli {
    pub m: i64,
    pub v0: EsMukai,
    pub v0_sq: i64,
    pub nonempty: bool,
    pub dim: i64,
    pub stable_nonempty: bool,
    pub ss_codim: i64,
    pub smooth: c_int,
    pub k_trivial: c_int,
}

/// The default lattice U ⊕ E8(−1) with reference class (1, 1, 0, ..., 0).
#[no_mangle]
pub extern "C" fn es_lattice_new_default() -> *mut EsLattice {
    Box::into_raw(Box::new(EsLattice { cfg: CliConfig::default() }))
}

/// Reads a JSON config `{"name", "gram", "reference_ample"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_lattice_from_json(json: *const c_char, out_lattice: *mut *mut EsLattice) -> EsStatus {
    guard(|| {
        let text = arg(json, "json")?;
        let slot = out(out_lattice, "out_lattice")?;
        let text = CStr::from_ptr(text).to_str().map_err(|e| status_of(Error::Parse(e.to_string())))?;
        let cfg = lift(CliConfig::from_json(text))?;
        *slot = Box::into_raw(Box::new(EsLattice { cfg }));
        Ok(())
    })
}

/// # Safety
/// `lattice` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn es_lattice_free(lattice: *mut EsLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// The message of the last failure on this thread, or NULL.
#[no_mangle]
pub extern "C" fn es_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn es_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_phi(lattice: *const EsLattice, d: *const [i64; ES_RANK], result: *mut EsPhi) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let d = NumClass(*arg(d, "d")?);
        let slot = out(result, "result")?;
        let p = lift(phi(&lat.cfg.gram, &d))?;
        *slot = EsPhi { value: p.value, witness: p.witness.f.0 };
        Ok(())
    })
}

/// `x.y` in the Gram form.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_pair(lattice: *const EsLattice, x: *const [i64; ES_RANK], y: *const [i64; ES_RANK], result: *mut i64) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let (x, y) = (NumClass(*arg(x, "x")?), NumClass(*arg(y, "y")?));
        *out(result, "result")? = lat.cfg.gram.pair(&x, &y);
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_mukai_pair(lattice: *const EsLattice, v: *const EsMukai, w: *const EsMukai, result: *mut EsRational) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let (v, w) = (MukaiVector::from(arg(v, "v")?), MukaiVector::from(arg(w, "w")?));
        *out(result, "result")? = EsRational::from_rational(&mukai_pair(&lat.cfg.gram, &v, &w))?;
        Ok(())
    })
}

unsafe fn slice_point(lat: &EsLattice, h: *const [i64; ES_RANK], b: EsRational, u: EsRational) -> Result<SlicePoint, EsStatus> {
    let h = NumClass(*arg(h, "h")?);
    lift(SlicePoint::new(&lat.cfg.gram, h, &lat.cfg.reference_ample, b.to_rational()?, u.to_rational()?))
}

/// `Z(v) = re + i·t·im_over_t` at `(H, b, u = t²)`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_central_charge(
    lattice: *const EsLattice,
    v: *const EsMukai,
    h: *const [i64; ES_RANK],
    b: EsRational,
    u: EsRational,
    re: *mut EsRational,
    im_over_t: *mut EsRational,
) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let v = MukaiVector::from(arg(v, "v")?);
        let p = slice_point(lat, h, b, u)?;
        let z = central_charge(&lat.cfg.gram, &v, &p);
        *out(re, "re")? = EsRational::from_rational(&z.re)?;
        *out(im_over_t, "im_over_t")? = EsRational::from_rational(&z.im_over_t)?;
        Ok(())
    })
}

/// Writes −1, 0 or 1 as the phase of `v` is below, equal to or above that
/// of `w`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_phase_cmp(
    lattice: *const EsLattice,
    v: *const EsMukai,
    w: *const EsMukai,
    h: *const [i64; ES_RANK],
    b: EsRational,
    u: EsRational,
    result: *mut c_int,
) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let (v, w) = (MukaiVector::from(arg(v, "v")?), MukaiVector::from(arg(w, "w")?));
        let p = slice_point(lat, h, b, u)?;
        *out(result, "result")? = lift(phase_cmp(&lat.cfg.gram, &v, &w, &p))? as c_int;
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_wall_locus(
    lattice: *const EsLattice,
    v: *const EsMukai,
    w: *const EsMukai,
    h: *const [i64; ES_RANK],
    result: *mut EsWallLocus,
) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let (v, w) = (MukaiVector::from(arg(v, "v")?), MukaiVector::from(arg(w, "w")?));
        let h = NumClass(*arg(h, "h")?);
        let zero = EsRational { num: 0, den: 1 };
        let mut r = EsWallLocus { kind: EsWallKind::Nowhere, center_b: zero, radius_sq: zero, b: zero };
        match wall_locus(&lat.cfg.gram, &v, &w, &h) {
            WallLocus::Circle(c) => {
                r.kind = EsWallKind::Circle;
                r.center_b = EsRational::from_rational(&c.center_b)?;
                r.radius_sq = EsRational::from_rational(&c.radius_sq)?;
            }
            WallLocus::VerticalLine { b } => {
                r.kind = EsWallKind::VerticalLine;
                r.b = EsRational::from_rational(&b)?;
            }
            WallLocus::Everywhere => r.kind = EsWallKind::Everywhere,
            WallLocus::Nowhere => {}
        }
        *out(result, "result")? = r;
        Ok(())
    })
}

/// The walls of the Hilbert scheme of `n` points for the class `h`,
/// outermost first.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_hilbert_walls(lattice: *const EsLattice, n: i64, h: *const [i64; ES_RANK], result: *mut *mut EsHilbertWalls) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let h = NumClass(*arg(h, "h")?);
        let slot = out(result, "result")?;
        let walls = lift(hilbert_wall_family(&lat.cfg.gram, n, &h))?;
        *slot = Box::into_raw(Box::new(EsHilbertWalls { walls }));
        Ok(())
    })
}

/// # Safety
/// `walls` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn es_hilbert_walls_len(walls: *const EsHilbertWalls) -> usize {
    walls.as_ref().map_or(0, |w| w.walls.len())
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_hilbert_walls_get(walls: *const EsHilbertWalls, index: usize, result: *mut EsHilbertWall) -> EsStatus {
    guard(|| {
        let ws = arg(walls, "walls")?;
        let w = ws.walls.get(index).ok_or_else(|| status_of(Error::Domain(format!("index {index} out of range"))))?;
        *out(result, "result")? = EsHilbertWall {
            k: w.k,
            center_b: EsRational::from_rational(&w.circle.center_b)?,
            radius_sq: EsRational::from_rational(&w.circle.radius_sq)?,
            t0_a: EsRational::from_rational(&w.t0.a)?,
            t0_rad: EsRational::from_rational(&w.t0.rad)?,
            witness_count: w.witnesses.len(),
        };
        Ok(())
    })
}

/// Witness `j` of wall `index`, with `H.F = k > 0`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_hilbert_walls_witness(walls: *const EsHilbertWalls, index: usize, j: usize, result: *mut [i64; ES_RANK]) -> EsStatus {
    guard(|| {
        let ws = arg(walls, "walls")?;
        let f = ws
            .walls
            .get(index)
            .and_then(|w| w.witnesses.get(j))
            .ok_or_else(|| status_of(Error::Domain(format!("witness ({index}, {j}) out of range"))))?;
        *out(result, "result")? = f.f.0;
        Ok(())
    })
}

/// # Safety
/// `walls` must come from `es_hilbert_walls` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn es_hilbert_walls_free(walls: *mut EsHilbertWalls) {
    if !walls.is_null() {
        drop(Box::from_raw(walls));
    }
}

/// Whether `D̃ − aB` is nef on the Hilbert scheme of `n` points.
///
/// # Safety
/// All pointers must be valid; `d` points to ten rationals.
#[no_mangle]
pub unsafe extern "C" fn es_nef_hilbert(lattice: *const EsLattice, d: *const [EsRational; ES_RANK], a: EsRational, n: i64, result: *mut EsNefResult) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let raw = arg(d, "d")?;
        let mut coords: [Rational; ES_RANK] = std::array::from_fn(|_| int(0));
        for (slot, x) in coords.iter_mut().zip(raw.iter()) {
            *slot = x.to_rational()?;
        }
        let verdict = lift(nef_hilbert(&lat.cfg.gram, &RationalNumClass(coords), &a.to_rational()?, n, &lat.cfg.reference_ample))?;
        let mut r = EsNefResult { nef: verdict.nef, binding: EsBinding::None, witness: [0; ES_RANK], pairing_value: 0 };
        match verdict.binding {
            None => {}
            Some(Binding::AmpleCone) => r.binding = EsBinding::AmpleCone,
            Some(Binding::NegativeA) => r.binding = EsBinding::NegativeA,
            Some(Binding::Isotropic(w)) => {
                r.binding = EsBinding::Isotropic;
                r.witness = w.f.0;
                r.pairing_value = w.pairing_value;
            }
        }
        *out(result, "result")? = r;
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_linsys(lattice: *const EsLattice, h: *const [i64; ES_RANK], result: *mut EsLinSys) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let h = NumClass(*arg(h, "h")?);
        let r = lift(linsys_report(&lat.cfg.gram, &h, &lat.cfg.reference_ample))?;
        let very_ample = match r.very_ample {
            VeryAmple::No => EsVeryAmple::No,
            VeryAmple::Yes => EsVeryAmple::Yes,
            VeryAmple::Open => EsVeryAmple::Open,
        };
        *out(result, "result")? = EsLinSys {
            d: r.d,
            phi: r.phi,
            bpf: r.bpf,
            very_ample,
            n_very_ample_max: r.n_very_ample_max,
            vanishing_max_n: r.vanishing_max_n,
        };
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn es_classify(lattice: *const EsLattice, v: *const EsMukai, result: *mut EsModuli) -> EsStatus {
    guard(|| {
        let lat = arg(lattice, "lattice")?;
        let v = MukaiVector::from(arg(v, "v")?);
        let r = lift(classify_moduli(&lat.cfg.gram, &v))?;
        *out(result, "result")? = EsModuli {
            m: r.m,
            v0: EsMukai { r: r.v0.r, c: r.v0.c.0, s2: r.v0.s2 },
            v0_sq: r.v0_sq,
            nonempty: r.nonempty,
            dim: match r.dim {
                Dim::Value(n) => n,
                Dim::Undefined => -1,
            },
            stable_nonempty: r.stable_nonempty,
            ss_codim: match r.ss_codim {
                SsCodim::Exactly(n) => n,
                SsCodim::Infinite => -1,
                SsCodim::GreaterThanOne => -2,
                SsCodim::Undefined => -3,
            },
            smooth: match r.smooth {
                Smooth::Yes => 1,
                Smooth::Unknown => -1,
            },
            k_trivial: match r.k_trivial {
                KTrivial::Yes => 1,
                KTrivial::No => 0,
                KTrivial::NotCovered => -1,
            },
        };
        Ok(())
    })
}

/// Runs a command line (without the program name) and returns its exit
/// code; stdout and stderr text are returned as owned strings.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out_text` and
/// `err_text` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn es_run(argc: usize, argv: *const *const c_char, out_text: *mut *mut c_char, err_text: *mut *mut c_char) -> c_int {
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<c_int, EsStatus> {
        let mut args = vec!["enriques-stab".to_string()];
        if argc > 0 {
            let ptrs = std::slice::from_raw_parts(arg(argv, "argv")?, argc);
            for &p in ptrs {
                let s = CStr::from_ptr(arg(p, "argv[i]")?).to_str().map_err(|e| status_of(Error::Parse(e.to_string())))?;
                args.push(s.to_string());
            }
        }
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = enriques_stab::cli::run(&args, None, &mut o, &mut e);
        let owned = |bytes: Vec<u8>| CString::new(String::from_utf8_lossy(&bytes).replace('\0', " ")).expect("NULs removed").into_raw();
        *out(out_text, "out_text")? = owned(o);
        *out(err_text, "err_text")? = owned(e);
        Ok(code)
    }));
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(s)) => s as c_int,
        Err(_) => EsStatus::Panic as c_int,
    }
}
