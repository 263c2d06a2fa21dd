//! C interface.
//!
//! A structure file is loaded into an opaque `PoissonHandle`. Calls return a
//! `PoissonStatus`; on failure `poisson_last_error` describes what went
//! wrong. Strings handed out by the library must be released with
//! `poisson_string_free`, handles with `poisson_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use poisson_core::duality::verify_duality_square;
use poisson_core::homology::{self, HomologyError, Mode};
use poisson_core::input::{load_str, Loaded, LoadError};
use poisson_core::report;

/// Result codes. The nonzero values below 6 match the exit codes of the
/// `poisson` command.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoissonStatus {
    Ok = 0,
    CheckFailed = 1,
    ParseError = 2,
    JacobiError = 3,
    AxiomError = 4,
    ModeError = 5,
    NullPointer = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

/// Which complex `poisson_betti_json` computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoissonKind {
    Homology = 0,
    Cohomology = 1,
}

/// Which module the computations use.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoissonModuleChoice {
    /// The module given in the file.
    Spec = 0,
    /// The file's module twisted by the modular derivation.
    Twisted = 1,
}

/// A loaded structure and module.
pub struct PoissonHandle {
    loaded: Loaded,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> PoissonStatus) -> PoissonStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(format!("panic: {msg}"));
            PoissonStatus::Panic
        }
    }
}

fn load_status(e: &LoadError) -> PoissonStatus {
    match e.exit_code() {
        3 => PoissonStatus::JacobiError,
        4 => PoissonStatus::AxiomError,
        _ => PoissonStatus::ParseError,
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> PoissonStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            PoissonStatus::Ok
        }
        Err(_) => {
            set_error("output contained a NUL byte");
            PoissonStatus::Panic
        }
    }
}

/// Parses a structure file given as text and stores a new handle in `out`.
///
/// # Safety
/// `toml_text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_load(toml_text: *const c_char, out: *mut *mut PoissonHandle) -> PoissonStatus {
    guard(|| {
        if toml_text.is_null() || out.is_null() {
            set_error("null pointer argument");
            return PoissonStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(toml_text).to_str() else {
            set_error("structure text is not valid UTF-8");
            return PoissonStatus::InvalidUtf8;
        };
        match load_str(text) {
            Ok(loaded) => {
                *out = Box::into_raw(Box::new(PoissonHandle { loaded }));
                PoissonStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                load_status(&e)
            }
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from `poisson_load` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn poisson_free(handle: *mut PoissonHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn poisson_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn poisson_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Number of variables.
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_dim(handle: *const PoissonHandle) -> usize {
    handle.as_ref().map_or(0, |h| h.loaded.structure.dim())
}

/// The modular derivation as JSON, written to `out`.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_modular_json(handle: *const PoissonHandle, out: *mut *mut c_char) -> PoissonStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            set_error("null pointer argument");
            return PoissonStatus::NullPointer;
        };
        let s = &h.loaded.structure;
        write_string(out, report::modular_json(s, &s.modular_derivation()))
    })
}

/// Betti table as JSON for all degrees `p` and `d` in `lo..=hi`.
/// `filtered` selects the filtered approximation instead of exact slices.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_betti_json(
    handle: *const PoissonHandle,
    kind: PoissonKind,
    module: PoissonModuleChoice,
    lo: i64,
    hi: i64,
    filtered: bool,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            set_error("null pointer argument");
            return PoissonStatus::NullPointer;
        };
        if lo > hi {
            set_error("empty degree range");
            return PoissonStatus::ParseError;
        }
        let m = match module {
            PoissonModuleChoice::Spec => h.loaded.module.clone(),
            PoissonModuleChoice::Twisted => h.loaded.module.modular_twist(),
        };
        let ps: Vec<usize> = (0..=m.ring_dim()).collect();
        let mode = if filtered {
            Mode::FilteredApproximate
        } else {
            Mode::ExactGraded
        };
        let table = match kind {
            PoissonKind::Homology => homology::ph_homology(&m, &ps, lo..=hi, mode),
            PoissonKind::Cohomology => homology::ph_cohomology(&m, &ps, lo..=hi, mode),
        };
        match table {
            Ok(t) => write_string(out, t.to_json()),
            Err(e @ HomologyError::NotHomogeneous) => {
                set_error(e.to_string());
                PoissonStatus::ModeError
            }
            Err(e) => {
                set_error(e.to_string());
                PoissonStatus::ParseError
            }
        }
    })
}

/// Checks the duality square on all basis cochains with values of weight at
/// most `max_degree`. Returns `POISSON_STATUS_CHECK_FAILED` on a mismatch.
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_verify_duality(handle: *const PoissonHandle, max_degree: i64) -> PoissonStatus {
    guard(|| {
        let Some(h) = handle.as_ref() else {
            set_error("null pointer argument");
            return PoissonStatus::NullPointer;
        };
        let m = &h.loaded.module;
        for p in 0..m.ring_dim() {
            if let Err(f) = verify_duality_square(m, p, max_degree) {
                set_error(format!("square fails at p={p}: {:?}", f.input));
                return PoissonStatus::CheckFailed;
            }
        }
        PoissonStatus::Ok
    })
}
