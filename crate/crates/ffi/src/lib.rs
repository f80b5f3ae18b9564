//! C ABI over `descent_algebra`.
//!
//! Conventions:
//! - Every fallible function returns a [`DaStatus`] and writes its result
//!   through an out-pointer only on success.
//! - On failure [`da_last_error`] describes the error; the message lives
//!   in thread-local storage until the next failing call on that thread.
//! - Strings returned through out-pointers are owned by the caller and
//!   released with [`da_string_free`].
//! - Handles are released with their `*_free` function; passing null to a
//!   free function is a no-op.
//! - Panics never cross the boundary; they surface as `DA_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use descent_algebra::algebra::Rational;
use descent_algebra::descent::{
    eulerian_element, eulerian_polynomial, structure_poly_eval, verify_named, verify_product_identity, verify_q_identity,
    Element, ProductLaw, QPair, StructureKind, VerificationReport,
};
use descent_algebra::perm::{Permutation, SignedPermutation};
use descent_algebra::poset::{count_partitions, parse_poset, AnyPoset, Flavor};
use descent_algebra::shuffle::{a_shuffle_distribution, tvd_csv, tvd_table};
use descent_algebra::Error;

/// Result codes. The first four match the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    Capacity = 3,
    NullPointer = 4,
    InvariantViolation = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaKind {
    A = 0,
    Cyclic = 1,
    B = 2,
    Augmented = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaLaw {
    A = 0,
    Cyclic = 1,
    B = 2,
    Aug = 3,
    Mixed = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaQPair {
    Aa = 0,
    Bb = 1,
    AugAug = 2,
    AugB = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaFlavor {
    Ordinary = 0,
    TypeB = 1,
    Augmented = 2,
}

/// Opaque rational group algebra element.
pub struct DaElement(Element);

/// Opaque verification report.
pub struct DaReport(VerificationReport);

/// Opaque poset of either type.
pub struct DaPoset(AnyPoset);

impl From<DaKind> for StructureKind {
    fn from(k: DaKind) -> Self {
        match k {
            DaKind::A => StructureKind::A,
            DaKind::Cyclic => StructureKind::Cyclic,
            DaKind::B => StructureKind::B,
            DaKind::Augmented => StructureKind::Augmented,
        }
    }
}

impl From<DaLaw> for ProductLaw {
    fn from(l: DaLaw) -> Self {
        match l {
            DaLaw::A => ProductLaw::A,
            DaLaw::Cyclic => ProductLaw::Cyclic,
            DaLaw::B => ProductLaw::B,
            DaLaw::Aug => ProductLaw::Aug,
            DaLaw::Mixed => ProductLaw::Mixed,
        }
    }
}

impl From<DaQPair> for QPair {
    fn from(p: DaQPair) -> Self {
        match p {
            DaQPair::Aa => QPair::AA,
            DaQPair::Bb => QPair::BB,
            DaQPair::AugAug => QPair::AugAug,
            DaQPair::AugB => QPair::AugB,
        }
    }
}

impl From<DaFlavor> for Flavor {
    fn from(f: DaFlavor) -> Self {
        match f {
            DaFlavor::Ordinary => Flavor::Ordinary,
            DaFlavor::TypeB => Flavor::TypeB,
            DaFlavor::Augmented => Flavor::Augmented,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', "\u{FFFD}")).expect("interior NULs were replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Internal failure: a status plus its message.
struct Fail(DaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Capacity { .. } => DaStatus::Capacity,
            Error::InvariantViolation(_) => DaStatus::InvariantViolation,
            _ => DaStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DaStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<DaStatus, Fail>) -> DaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            DaStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(DaStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<DaStatus, Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(DaStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<DaStatus, Fail> {
    let c = CString::new(s).map_err(|_| Fail(DaStatus::InvalidInput, "string contains NUL".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(DaStatus::Ok)
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn boxed<T>(out: *mut *mut T, v: T) -> Result<DaStatus, Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(DaStatus::Ok)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn da_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn da_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Descent statistics of the window `perm[0..len]` as JSON. With `is_signed`
/// the window is read as a signed permutation.
///
/// # Safety
/// `perm` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_permutation_stats_json(
    perm: *const i32,
    len: usize,
    is_signed: bool,
    out: *mut *mut c_char,
) -> DaStatus {
    guard(|| {
        if perm.is_null() && len > 0 {
            return Err(null("perm"));
        }
        let window = if len == 0 { &[][..] } else { std::slice::from_raw_parts(perm, len) };
        let json = if is_signed {
            serde_json::to_string(&SignedPermutation::new(window)?.descent_stats())
        } else {
            let unsigned: Vec<usize> = window
                .iter()
                .map(|&v| usize::try_from(v).map_err(|_| Fail(DaStatus::InvalidInput, format!("negative entry {v}"))))
                .collect::<Result<_, _>>()?;
            serde_json::to_string(&Permutation::new(&unsigned)?.descent_stats())
        }
        .map_err(|e| Fail(DaStatus::InvalidInput, e.to_string()))?;
        write_string(out, json)
    })
}

/// Eulerian polynomial coefficients. Writes at most `cap` values into
/// `counts` and the full length into `len`; a short buffer is an error.
///
/// # Safety
/// `counts` must have room for `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_eulerian_polynomial(
    n: usize,
    kind: DaKind,
    counts: *mut u64,
    cap: usize,
    len: *mut usize,
) -> DaStatus {
    guard(|| {
        let hist = eulerian_polynomial(n, kind.into())?;
        write_out(len, hist.len())?;
        if hist.len() > cap || counts.is_null() {
            return Err(Fail(DaStatus::InvalidInput, format!("buffer holds {cap} values, need {}", hist.len())));
        }
        ptr::copy_nonoverlapping(hist.as_ptr(), counts, hist.len());
        Ok(DaStatus::Ok)
    })
}

/// The Eulerian element of index `i`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_eulerian(n: usize, kind: DaKind, i: usize, out: *mut *mut DaElement) -> DaStatus {
    guard(|| boxed(out, DaElement(eulerian_element(n, kind.into(), i)?)))
}

/// The structure polynomial at `x = num/den`, barred when `bar`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_structure(
    n: usize,
    kind: DaKind,
    num: i64,
    den: i64,
    bar: bool,
    out: *mut *mut DaElement,
) -> DaStatus {
    guard(|| {
        if den == 0 {
            return Err(Fail(DaStatus::InvalidInput, "zero denominator".into()));
        }
        boxed(out, DaElement(structure_poly_eval(n, kind.into(), &Rational::new(num, den), bar)?))
    })
}

/// Parses an element from its JSON wire format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_from_json(json: *const c_char, out: *mut *mut DaElement) -> DaStatus {
    guard(|| boxed(out, DaElement(Element::from_json(read_str(json, "json")?)?)))
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_to_json(e: *const DaElement, out: *mut *mut c_char) -> DaStatus {
    guard(|| write_string(out, handle(e, "element")?.0.to_json()))
}

/// `a · b` in the group algebra.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_convolve(
    a: *const DaElement,
    b: *const DaElement,
    out: *mut *mut DaElement,
) -> DaStatus {
    guard(|| {
        let p = handle(a, "a")?.0.convolve(&handle(b, "b")?.0)?;
        boxed(out, DaElement(p))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_add(a: *const DaElement, b: *const DaElement, out: *mut *mut DaElement) -> DaStatus {
    guard(|| {
        let s = handle(a, "a")?.0.add(&handle(b, "b")?.0)?;
        boxed(out, DaElement(s))
    })
}

/// Multiplies every coefficient by `num/den`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_scale(e: *const DaElement, num: i64, den: i64, out: *mut *mut DaElement) -> DaStatus {
    guard(|| {
        if den == 0 {
            return Err(Fail(DaStatus::InvalidInput, "zero denominator".into()));
        }
        boxed(out, DaElement(handle(e, "element")?.0.scale(&Rational::new(num, den))))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_element_equal(a: *const DaElement, b: *const DaElement, out: *mut bool) -> DaStatus {
    guard(|| write_out(out, handle(a, "a")?.0 == handle(b, "b")?.0))
}

/// Number of nonzero terms; 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn da_element_support_size(e: *const DaElement) -> usize {
    e.as_ref().map_or(0, |e| e.0.support_size())
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_element_free(e: *mut DaElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Checks a product law. A failing identity still yields a report and
/// `DA_STATUS_VERIFICATION_FAILED`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_verify_product(n: usize, law: DaLaw, out: *mut *mut DaReport) -> DaStatus {
    guard(|| report(out, verify_product_identity(n, law.into())?))
}

/// Checks an identity by its command line name (`a`, `loday`, `theta`, ...).
///
/// # Safety
/// `identity` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_verify_named(n: usize, identity: *const c_char, out: *mut *mut DaReport) -> DaStatus {
    guard(|| report(out, verify_named(n, read_str(identity, "identity")?)?))
}

/// Checks a q-product identity at `(k, l)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_verify_q(n: usize, pair: DaQPair, k: u32, l: u32, out: *mut *mut DaReport) -> DaStatus {
    guard(|| report(out, verify_q_identity(n, pair.into(), k, l)?))
}

unsafe fn report(out: *mut *mut DaReport, r: VerificationReport) -> Result<DaStatus, Fail> {
    let pass = r.pass;
    boxed(out, DaReport(r))?;
    Ok(if pass { DaStatus::Ok } else { DaStatus::VerificationFailed })
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn da_report_pass(r: *const DaReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.pass)
}

/// Report JSON; `no_timing` zeroes the `millis` field.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_report_to_json(r: *const DaReport, no_timing: bool, out: *mut *mut c_char) -> DaStatus {
    guard(|| {
        let r = handle(r, "report")?.0.clone();
        let r = if no_timing { r.without_timing() } else { r };
        write_string(out, r.to_json())
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_report_free(r: *mut DaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Parses the poset text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_poset_parse(text: *const c_char, out: *mut *mut DaPoset) -> DaStatus {
    guard(|| boxed(out, DaPoset(parse_poset(read_str(text, "text")?)?)))
}

/// Number of P-partitions with parameter `k`, by enumeration.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_poset_count_partitions(p: *const DaPoset, k: usize, flavor: DaFlavor, out: *mut u64) -> DaStatus {
    guard(|| {
        let c = match &handle(p, "poset")?.0 {
            AnyPoset::A(p) => count_partitions(p, k, flavor.into())?,
            AnyPoset::B(p) => count_partitions(p, k, flavor.into())?,
        };
        write_out(out, c)
    })
}

/// Linear extensions as a JSON array of windows.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_poset_linear_extensions_json(p: *const DaPoset, out: *mut *mut c_char) -> DaStatus {
    guard(|| {
        let windows: Vec<Vec<i32>> = match &handle(p, "poset")?.0 {
            AnyPoset::A(p) => p.linear_extensions()?.iter().map(|e| e.packed().to_vec()).collect(),
            AnyPoset::B(p) => p.linear_extensions()?.iter().map(|e| e.packed().to_vec()).collect(),
        };
        write_string(out, serde_json::to_string(&windows).expect("windows serialize"))
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_poset_free(p: *mut DaPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The `a`-shuffle distribution on `n` cards as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_shuffle_json(n: usize, a: u64, out: *mut *mut c_char) -> DaStatus {
    guard(|| write_string(out, a_shuffle_distribution(n, a)?.to_json()?))
}

/// Distance to uniform after `1..=m` two-packet shuffles, as CSV with
/// `places` decimal digits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn da_shuffle_tvd_csv(n: usize, m: u32, places: usize, out: *mut *mut c_char) -> DaStatus {
    guard(|| write_string(out, tvd_csv(&tvd_table(n, m)?, places)))
}
