//! C ABI over `confgeo`.
//!
//! Structures are opaque `ConfgeoStructure` handles released with
//! [`confgeo_structure_free`]. Every call returns a [`ConfgeoStatus`]; on
//! failure [`confgeo_last_error`] describes the error for the calling thread.
//! Strings returned through out-parameters are released with
//! [`confgeo_string_free`].

use confgeo::catalog::{self, BuildArgs};
use confgeo::report::{self, AnalyzeOptions};
use confgeo::{canon, io, Error, IncidenceStructure};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfgeoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    BudgetExceeded = 5,
    Internal = 6,
}

/// Opaque incidence structure.
pub struct ConfgeoStructure(IncidenceStructure);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ConfgeoStatus {
    match e {
        Error::Parse(_) => ConfgeoStatus::Parse,
        Error::BudgetExceeded(_) => ConfgeoStatus::BudgetExceeded,
        _ => ConfgeoStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (ConfgeoStatus, String)>) -> ConfgeoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConfgeoStatus::Ok,
        Ok(Err((st, msg))) => {
            set_error(&msg);
            st
        }
        Err(_) => {
            set_error("internal panic");
            ConfgeoStatus::Internal
        }
    }
}

fn lib<T>(r: confgeo::Result<T>) -> Result<T, (ConfgeoStatus, String)> {
    r.map_err(|e| (status_of(&e), format!("{}: {e}", e.kind())))
}

fn null() -> (ConfgeoStatus, String) {
    (ConfgeoStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (ConfgeoStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ConfgeoStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a>(p: *const ConfgeoStructure) -> Result<&'a IncidenceStructure, (ConfgeoStatus, String)> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (ConfgeoStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| (ConfgeoStatus::Internal, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_handle(out: *mut *mut ConfgeoStructure, s: IncidenceStructure) -> Result<(), (ConfgeoStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(ConfgeoStructure(s)));
    Ok(())
}

/// Message for the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn confgeo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a catalog entry. Parameters that the builder ignores may be zero.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_build(
    name: *const c_char,
    n: u32,
    g: u32,
    v: u32,
    q: u64,
    out: *mut *mut ConfgeoStructure,
) -> ConfgeoStatus {
    guard(|| {
        let name = str_arg(name)?;
        let d = BuildArgs::default();
        let args = BuildArgs {
            n: if n == 0 { d.n } else { n as usize },
            g: if g == 0 { d.g } else { g as usize },
            v: if v == 0 { d.v } else { v as usize },
            q: if q == 0 { d.q } else { q },
            ..d
        };
        put_handle(out, lib(catalog::build(name, &args))?)
    })
}

/// Parses the JSON interchange format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_from_json(json: *const c_char, out: *mut *mut ConfgeoStructure) -> ConfgeoStatus {
    guard(|| put_handle(out, lib(io::from_json(str_arg(json)?))?))
}

/// # Safety
/// `s` must be null or a handle obtained from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn confgeo_structure_free(s: *mut ConfgeoStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn confgeo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of points and blocks.
///
/// # Safety
/// `s` must be a live handle; `v` and `b` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn confgeo_size(s: *const ConfgeoStructure, v: *mut usize, b: *mut usize) -> ConfgeoStatus {
    guard(|| {
        let s = handle(s)?;
        if v.is_null() || b.is_null() {
            return Err(null());
        }
        *v = s.v();
        *b = s.b();
        Ok(())
    })
}

/// Writes 1 if point `x` lies on block `j`, else 0.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_incident(s: *const ConfgeoStructure, x: usize, j: usize, out: *mut u8) -> ConfgeoStatus {
    guard(|| {
        let s = handle(s)?;
        if out.is_null() {
            return Err(null());
        }
        if x >= s.v() || j >= s.b() {
            return Err((ConfgeoStatus::InvalidArgument, format!("index ({x}, {j}) out of range")));
        }
        *out = u8::from(s.incident(x, j));
        Ok(())
    })
}

/// Serializes to the JSON interchange format.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_to_json(s: *const ConfgeoStructure, out: *mut *mut c_char) -> ConfgeoStatus {
    guard(|| put_string(out, io::to_json(handle(s)?)))
}

/// Full analysis report as JSON. `with_symmetry = 0` skips group computations.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_analyze(s: *const ConfgeoStructure, with_symmetry: u8, out: *mut *mut c_char) -> ConfgeoStatus {
    guard(|| {
        let opts = AnalyzeOptions { symmetry: with_symmetry != 0, ..AnalyzeOptions::default() };
        put_string(out, report::analyze(handle(s)?, opts).to_json())
    })
}

/// Writes 1 if the structures are isomorphic, else 0.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_is_isomorphic(a: *const ConfgeoStructure, b: *const ConfgeoStructure, out: *mut u8) -> ConfgeoStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if out.is_null() {
            return Err(null());
        }
        *out = u8::from(canon::is_isomorphic(a, b));
        Ok(())
    })
}

/// Number of symmetric `v_3` classes; `budget = 0` means unlimited.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confgeo_enumerate_v3(v: u32, lineal: u8, budget: u64, out: *mut usize) -> ConfgeoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let opts = confgeo::enumerate::EnumOptions { lineal_only: lineal != 0, budget: (budget > 0).then_some(budget), reverse_order: false };
        *out = lib(confgeo::enumerate::enumerate_v3_with(v as usize, opts))?.count();
        Ok(())
    })
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn confgeo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
