//! C ABI over the solid-torus library.
//!
//! Every function returns an [`StStatus`]; on failure a message is kept in a
//! thread-local slot readable through [`st_last_error`]. Handles are opaque
//! and must be released with their matching `*_free` function. Strings
//! returned by the library are released with [`st_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use solid_torus::bundle::check_claims;
use solid_torus::layered::family;
use solid_torus::normal::{is_normal, NormalVector};
use solid_torus::search::{minimal_complexity_disc, verify_61_2, SearchBudget, Status};
use solid_torus::tri::{first_homology, Triangulation};
use solid_torus::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NotFound = 5,
    Overflow = 6,
    Panic = 7,
}

/// A validated triangulation.
pub struct StTriangulation(Triangulation);

/// A normal surface in standard coordinates.
pub struct StNormalVector(NormalVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> StStatus {
    match e {
        Error::Syntax { .. }
        | Error::Involution { .. }
        | Error::SelfGluing { .. }
        | Error::TetOutOfRange { .. }
        | Error::ReversedEdge { .. } => StStatus::ParseError,
        Error::Overflow => StStatus::Overflow,
        _ => StStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (StStatus, String)>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            StStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StStatus::Panic
        }
    }
}

fn lib(e: Error) -> (StStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (StStatus, String) {
    (StStatus::NullArgument, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (StStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (StStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the exchange text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_triangulation_parse(text: *const c_char, out: *mut *mut StTriangulation) -> StStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = read_str(text, "text")?;
        let t = Triangulation::parse(s).map_err(lib)?;
        *out = Box::into_raw(Box::new(StTriangulation(t)));
        Ok(())
    })
}

/// The layered solid torus `T_i`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_family(i: usize, out: *mut *mut StTriangulation) -> StStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(StTriangulation(family(i).tri)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn st_triangulation_free(t: *mut StTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_triangulation_tet_count(t: *const StTriangulation, out: *mut usize) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = t.0.tet_count();
        Ok(())
    })
}

/// Canonical text; free with `st_string_free`.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_triangulation_serialize(t: *const StTriangulation, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c(t.0.serialize());
        Ok(())
    })
}

/// Rank of `H1` and the boundary kernel slope. `has_kernel` is false when the
/// boundary is not a torus with a primitive kernel.
///
/// # Safety
/// `t` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_first_homology(
    t: *const StTriangulation,
    rank: *mut usize,
    has_kernel: *mut bool,
    kernel_x: *mut i64,
    kernel_y: *mut i64,
) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if rank.is_null() || has_kernel.is_null() || kernel_x.is_null() || kernel_y.is_null() {
            return Err(null("output"));
        }
        let h = first_homology(&t.0).map_err(lib)?;
        *rank = h.h1_rank;
        *has_kernel = false;
        if let Some(s) = h.boundary_map_kernel_slope {
            let (x, y) = s.to_i64_pair().ok_or_else(|| lib(Error::Overflow))?;
            *has_kernel = true;
            *kernel_x = x;
            *kernel_y = y;
        }
        Ok(())
    })
}

/// Whether `min_{|n| <= window} |n x_{i+2} - y_{i+2}| >= x_{i+2}/3` and the
/// golden-ratio bound both hold.
///
/// # Safety
/// `pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_verify_61_2(i: usize, window: i64, pass: *mut bool) -> StStatus {
    guard(|| {
        if pass.is_null() {
            return Err(null("pass"));
        }
        if window < 0 {
            return Err((StStatus::InvalidInput, "window is negative".into()));
        }
        *pass = verify_61_2(i, window).status == Status::Pass;
        Ok(())
    })
}

/// Least-complexity normal meridian disc with at most `max_pieces` pieces.
/// Returns `NotFound` when the budget holds none.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_minimal_meridian_disc(
    t: *const StTriangulation,
    max_pieces: u64,
    out: *mut *mut StNormalVector,
) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        match minimal_complexity_disc(&t.0, SearchBudget::pieces(max_pieces)).map_err(lib)? {
            Some(m) => {
                *out = Box::into_raw(Box::new(StNormalVector(m.disc.vector)));
                Ok(())
            }
            None => Err((StStatus::NotFound, format!("no meridian disc with at most {max_pieces} pieces"))),
        }
    })
}

/// Reads a vector from a JSON array of 7-integer arrays, checked against `t`.
///
/// # Safety
/// `t` must be a live handle, `json` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn st_normal_vector_from_json(
    t: *const StTriangulation,
    json: *const c_char,
    out: *mut *mut StNormalVector,
) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = read_str(json, "json")?;
        let v: NormalVector = serde_json::from_str(s).map_err(|e| (StStatus::ParseError, e.to_string()))?;
        if !is_normal(&t.0, &v).map_err(lib)? {
            return Err(lib(Error::NotNormal));
        }
        *out = Box::into_raw(Box::new(StNormalVector(v)));
        Ok(())
    })
}

/// JSON text of the vector; free with `st_string_free`.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_normal_vector_to_json(v: *const StNormalVector, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("v"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c(serde_json::to_string(&v.0).expect("vectors serialize"));
        Ok(())
    })
}

/// Number of normal triangles and quadrilaterals.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_normal_vector_piece_count(v: *const StNormalVector, out: *mut u64) -> StStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("v"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = v.0.total();
        Ok(())
    })
}

/// # Safety
/// `v` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn st_normal_vector_free(v: *mut StNormalVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Parallelity-bundle checks for the manifold cut along `v`: every component
/// is a product (`claim1`), and every component meeting the annulus meets
/// both sides of the disc (`claim2`).
///
/// # Safety
/// `t` and `v` must be live handles; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_check_claims(
    t: *const StTriangulation,
    v: *const StNormalVector,
    claim1: *mut bool,
    claim2: *mut bool,
) -> StStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        let v = v.as_ref().ok_or_else(|| null("v"))?;
        if claim1.is_null() || claim2.is_null() {
            return Err(null("output"));
        }
        let r = check_claims(&t.0, &v.0).map_err(lib)?;
        *claim1 = r.claim1;
        *claim2 = r.claim2;
        Ok(())
    })
}
