//! C ABI for `orbitlaw`.
//!
//! Every function returns an [`OrbitlawStatus`]; results go through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`orbitlaw_last_error`]. Handles are opaque and must be released with the
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitlaw::exact::parse_rational;
use orbitlaw::measures::{
    dirichlet_norm, lattice_count, pants_density, ratio_distribution, thurston_volume_lattice, RatioDistribution,
};
use orbitlaw::orbit::{enumerate, OrbitQuery};
use orbitlaw::torus::{intersection, CurveClass, KMulticurve, LengthFunctional};
use orbitlaw::{Error, SimplexPoint, SurfaceType};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitlawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    Internal = 5,
}

/// A length functional such as `i:a+b` or `flat`.
pub struct OrbitlawFunctional {
    inner: LengthFunctional,
}

/// A materialized orbit, in enumeration order.
pub struct OrbitlawOrbit {
    elements: Vec<KMulticurve>,
}

/// A tabulated ratio law.
pub struct OrbitlawRatioLaw {
    inner: RatioDistribution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(OrbitlawStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => OrbitlawStatus::ParseError,
            Error::BudgetExceeded { .. } => OrbitlawStatus::BudgetExceeded,
            _ => OrbitlawStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(OrbitlawStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(OrbitlawStatus::InvalidArgument, msg.into())
}

/// Runs `f`, recording failures and turning panics into `Internal`.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> OrbitlawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrbitlawStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            OrbitlawStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(OrbitlawStatus::ParseError, format!("{what} is not valid UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn orbitlaw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn orbitlaw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Geometric intersection number of the primitive classes `(p1,q1)` and `(p2,q2)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_intersection(p1: i64, q1: i64, p2: i64, q2: i64, out: *mut u64) -> OrbitlawStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let u = CurveClass::new(p1, q1)?;
        let v = CurveClass::new(p2, q2)?;
        *out = intersection(&u, &v);
        Ok(())
    })
}

/// Parses a functional spec into a new handle.
///
/// # Safety
/// `spec` must be null or a nul-terminated string; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_functional_parse(
    spec: *const c_char,
    out: *mut *mut OrbitlawFunctional,
) -> OrbitlawStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let inner: LengthFunctional = str_arg(spec, "spec")?.parse()?;
        *out = Box::into_raw(Box::new(OrbitlawFunctional { inner }));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from [`orbitlaw_functional_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_functional_free(f: *mut OrbitlawFunctional) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Value of the functional at the integer vector `(p, q)`.
///
/// # Safety
/// `f` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_functional_eval(
    f: *const OrbitlawFunctional,
    p: i64,
    q: i64,
    out: *mut f64,
) -> OrbitlawStatus {
    guard(|| {
        let f = ref_arg(f, "functional")?;
        let out = out_arg(out, "out")?;
        *out = f.inner.eval_vector((p, q)).to_f64();
        Ok(())
    })
}

/// Number of orbit elements of the standard pair with total length at most `cutoff`
/// (a rational such as `"5/2"`), counted without storing them.
///
/// # Safety
/// Pointers must be null or valid as described for the other functions.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_orbit_count(
    f: *const OrbitlawFunctional,
    cutoff: *const c_char,
    out: *mut u64,
) -> OrbitlawStatus {
    guard(|| {
        let f = ref_arg(f, "functional")?;
        let out = out_arg(out, "out")?;
        let cutoff = parse_rational(str_arg(cutoff, "cutoff")?)?;
        *out = enumerate(OrbitQuery::standard(f.inner.clone(), cutoff)?)?.count();
        Ok(())
    })
}

/// Materializes the orbit of `basepoint` (null for the standard pair) below
/// `cutoff`, failing with `BudgetExceeded` when more than `budget` elements
/// would be stored.
///
/// # Safety
/// Pointers must be null or valid as described for the other functions.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_orbit_enumerate(
    f: *const OrbitlawFunctional,
    cutoff: *const c_char,
    basepoint: *const c_char,
    budget: u64,
    out: *mut *mut OrbitlawOrbit,
) -> OrbitlawStatus {
    guard(|| {
        let f = ref_arg(f, "functional")?;
        let out = out_arg(out, "out")?;
        let cutoff = parse_rational(str_arg(cutoff, "cutoff")?)?;
        let base = if basepoint.is_null() {
            KMulticurve::standard_pair()
        } else {
            str_arg(basepoint, "basepoint")?.parse()?
        };
        let elements = enumerate(OrbitQuery::new(base, f.inner.clone(), cutoff)?)?.materialize(budget)?;
        *out = Box::into_raw(Box::new(OrbitlawOrbit { elements }));
        Ok(())
    })
}

/// # Safety
/// `o` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_orbit_len(o: *const OrbitlawOrbit, out: *mut usize) -> OrbitlawStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(o, "orbit")?.elements.len();
        Ok(())
    })
}

/// Writes the curves of element `index` into `p` and `q` (capacity `cap`
/// each) and its component count into `k`. With `cap` too small only `k` is
/// written and `InvalidArgument` is returned.
///
/// # Safety
/// `p` and `q` must be valid for `cap` writes; other pointers as usual.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_orbit_get(
    o: *const OrbitlawOrbit,
    index: usize,
    p: *mut i64,
    q: *mut i64,
    cap: usize,
    k: *mut usize,
) -> OrbitlawStatus {
    guard(|| {
        let o = ref_arg(o, "orbit")?;
        let k = out_arg(k, "k")?;
        let g = o
            .elements
            .get(index)
            .ok_or_else(|| invalid(format!("index {index} out of range for orbit of {}", o.elements.len())))?;
        *k = g.k();
        if cap < g.k() {
            return Err(invalid(format!("capacity {cap} below component count {}", g.k())));
        }
        if p.is_null() || q.is_null() {
            return Err(null("p or q"));
        }
        for (i, c) in g.curves().enumerate() {
            *p.add(i) = c.p();
            *q.add(i) = c.q();
        }
        Ok(())
    })
}

/// # Safety
/// `o` must be null or a handle from [`orbitlaw_orbit_enumerate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_orbit_free(o: *mut OrbitlawOrbit) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Pants-decomposition density of the surface `(genus, boundary)` at the
/// simplex point `x[0..n]`.
///
/// # Safety
/// `x` must be valid for `n` reads; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_pants_density(
    genus: u32,
    boundary: u32,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> OrbitlawStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if x.is_null() {
            return Err(null("x"));
        }
        let s = SurfaceType::new(genus, boundary)?;
        let pt = SimplexPoint::new(std::slice::from_raw_parts(x, n).to_vec())?;
        *out = pants_density(s, &pt)?;
        Ok(())
    })
}

/// `∫ ∏ x_i` over the standard `n`-simplex.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_dirichlet_norm(n: u32, out: *mut f64) -> OrbitlawStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        *out = dirichlet_norm(n).value();
        Ok(())
    })
}

/// Lattice estimate of the volume of `{φ ≤ 1}` at scale `l`; the integer
/// point count is written to `count` when it is not null.
///
/// # Safety
/// Pointers must be null or valid as described for the other functions.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_lattice_volume(
    f: *const OrbitlawFunctional,
    l: u64,
    out: *mut f64,
    count: *mut u64,
) -> OrbitlawStatus {
    guard(|| {
        let f = ref_arg(f, "functional")?;
        let out = out_arg(out, "out")?;
        if l == 0 {
            return Err(invalid("scale must be positive"));
        }
        *out = thurston_volume_lattice(&f.inner, l);
        if let Some(c) = count.as_mut() {
            *c = lattice_count(&f.inner, l);
        }
        Ok(())
    })
}

/// Tabulates the law of `ψ/φ`.
///
/// # Safety
/// Pointers must be null or valid as described for the other functions.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_ratio_law_new(
    psi: *const OrbitlawFunctional,
    phi: *const OrbitlawFunctional,
    resolution: usize,
    out: *mut *mut OrbitlawRatioLaw,
) -> OrbitlawStatus {
    guard(|| {
        let psi = ref_arg(psi, "psi")?;
        let phi = ref_arg(phi, "phi")?;
        let out = out_arg(out, "out")?;
        if resolution == 0 {
            return Err(invalid("resolution must be positive"));
        }
        let inner = ratio_distribution(&psi.inner, &phi.inner, resolution);
        *out = Box::into_raw(Box::new(OrbitlawRatioLaw { inner }));
        Ok(())
    })
}

/// # Safety
/// `law` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_ratio_law_cdf(law: *const OrbitlawRatioLaw, t: f64, out: *mut f64) -> OrbitlawStatus {
    guard(|| {
        let law = ref_arg(law, "law")?;
        *out_arg(out, "out")? = law.inner.cdf(t);
        Ok(())
    })
}

/// # Safety
/// `law` must be a live handle or null; `lo` and `hi` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_ratio_law_support(
    law: *const OrbitlawRatioLaw,
    lo: *mut f64,
    hi: *mut f64,
) -> OrbitlawStatus {
    guard(|| {
        let law = ref_arg(law, "law")?;
        let lo = out_arg(lo, "lo")?;
        let hi = out_arg(hi, "hi")?;
        (*lo, *hi) = law.inner.support();
        Ok(())
    })
}

/// # Safety
/// `law` must be null or a handle from [`orbitlaw_ratio_law_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbitlaw_ratio_law_free(law: *mut OrbitlawRatioLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}
