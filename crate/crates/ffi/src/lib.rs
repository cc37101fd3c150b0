//! C ABI over `ars-core`.
//!
//! Systems are opaque `ArsSystem` handles built from the JSON document
//! format and released with `ars_system_free`. Every fallible call returns an
//! `ArsStatus`; on failure a one-line reason is available from
//! `ars_last_error` on the same thread until the next failing call.
//! Strings handed out by the library are freed with `ars_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ars_core::cli::{element_report, global_report};
use ars_core::document::{to_dot, ArsDocument};
use ars_core::properties::{join_pair, Analysis, GlobalProperty, Peak, Property};
use ars_core::relation::{path_between, ElementId, FiniteArs, PathWitness};
use ars_core::theorems::{ample_fuel, generalized_newman_join, newman_join, normalize_finite, wn_un_join};
use ars_core::wellfounded::wf_equivalence_report;
use ars_core::{Error, Precondition};

/// Outcome of a call. The numbering matches the `ars` exit codes where they
/// overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArsStatus {
    Ok = 0,
    /// The question was answered and the answer is no (unjoinable peak).
    Fails = 1,
    /// Bad JSON, unknown name or property, out-of-range index, capacity.
    InvalidInput = 2,
    Precondition = 3,
    FuelExhausted = 4,
    NullPointer = 5,
    /// A bug: the library panicked. The handle arguments are still valid.
    Internal = 6,
}

/// Which join construction `ars_join` uses. Passed as a `uint32_t` so that
/// out-of-range values are reported instead of being undefined behaviour.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArsJoinMethod {
    Newman = 0,
    GeneralizedNewman = 1,
    WnUn = 2,
    Exhaustive = 3,
}

/// An immutable finite rewriting system.
pub struct ArsSystem {
    ars: FiniteArs,
}

/// A reduction path; indices refer to the system it came from.
pub struct ArsPath {
    nodes: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error, ars: Option<&FiniteArs>) -> ArsStatus {
    let message = match (e, ars) {
        (Error::PreconditionFailed(p), Some(a)) => format!("{}: {}", p.tag(), p.describe(a)),
        _ => e.to_string(),
    };
    set_error(message);
    match e {
        Error::PreconditionFailed(_) => ArsStatus::Precondition,
        Error::FuelExhausted { .. } => ArsStatus::FuelExhausted,
        _ => ArsStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> ArsStatus) -> ArsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error: panic in ars-ffi".to_string());
            ArsStatus::Internal
        }
    }
}

fn null() -> ArsStatus {
    set_error("null pointer argument".to_string());
    ArsStatus::NullPointer
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, ArsStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8".to_string());
        ArsStatus::InvalidInput
    })
}

fn element(ars: &FiniteArs, index: usize) -> Result<ElementId, ArsStatus> {
    ars.element(index).map_err(|e| status_of(&e, None))
}

fn give_string(s: String, out: *mut *mut c_char) -> ArsStatus {
    let c = CString::new(s).expect("reports have no nul");
    unsafe { *out = c.into_raw() };
    ArsStatus::Ok
}

/// Message for the last failing call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn ars_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ars_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a system from a JSON document such as
/// `{"elements": ["a", "b"], "steps": [["a", "b"]]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ars_system_from_json(json: *const c_char, out: *mut *mut ArsSystem) -> ArsStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let json = match text(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match ArsDocument::parse(json).and_then(|d| d.to_ars()) {
            Ok(ars) => {
                *out = Box::into_raw(Box::new(ArsSystem { ars }));
                ArsStatus::Ok
            }
            Err(e) => status_of(&e, None),
        }
    })
}

/// # Safety
/// `sys` must come from `ars_system_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ars_system_free(sys: *mut ArsSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of elements; 0 for NULL.
///
/// # Safety
/// `sys` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ars_system_size(sys: *const ArsSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.ars.size())
}

/// Index of the element called `name`.
///
/// # Safety
/// `sys` live, `name` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_element_index(sys: *const ArsSystem, name: *const c_char, out: *mut usize) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        let name = match text(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match sys.ars.lookup(name) {
            Some(e) => {
                *out = e.index();
                ArsStatus::Ok
            }
            None => status_of(&Error::UnknownName(name.to_string()), None),
        }
    })
}

/// Decide an element-level property such as "CR" or "SN" at `element`.
///
/// # Safety
/// `sys` live, `property` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_check_element(
    sys: *const ArsSystem,
    element_index: usize,
    property: *const c_char,
    out: *mut bool,
) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        let label = match text(property) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(p) = Property::from_label(label) else {
            set_error(format!("unknown element property `{label}`"));
            return ArsStatus::InvalidInput;
        };
        let a = match element(&sys.ars, element_index) {
            Ok(a) => a,
            Err(s) => return s,
        };
        *out = Analysis::new(&sys.ars).profile(a).get(p);
        ArsStatus::Ok
    })
}

/// Decide a property of the whole system: any element-level label (meaning
/// "at every element") or one of BP, RP, RPminus, Inc, FB, Dec.
///
/// # Safety
/// `sys` live, `property` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_check_global(sys: *const ArsSystem, property: *const c_char, out: *mut bool) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        let label = match text(property) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(g) =
            GlobalProperty::from_label(label).or_else(|| Property::from_label(label).map(GlobalProperty::All))
        else {
            set_error(format!("unknown property `{label}`"));
            return ArsStatus::InvalidInput;
        };
        *out = Analysis::new(&sys.ars).global().get(g);
        ArsStatus::Ok
    })
}

/// The `ars check --json` report: the element report when `element_index`
/// is in range, the global report when it is `SIZE_MAX`. Free with
/// `ars_string_free`.
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_report_json(
    sys: *const ArsSystem,
    element_index: usize,
    out: *mut *mut c_char,
) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        let json = if element_index == usize::MAX {
            serde_json::to_string(&global_report(&sys.ars))
        } else {
            let a = match element(&sys.ars, element_index) {
                Ok(a) => a,
                Err(s) => return s,
            };
            let p = Analysis::new(&sys.ars).profile(a);
            serde_json::to_string(&element_report(&sys.ars, &p))
        };
        give_string(json.expect("reports serialize"), out)
    })
}

/// DOT rendering of the system. Free with `ars_string_free`.
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_to_dot(sys: *const ArsSystem, out: *mut *mut c_char) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        give_string(to_dot(&sys.ars), out)
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ars_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Reduce a strongly normalizing element to its normal form. `fuel` 0 means
/// "enough". Fails with `ARS_STATUS_PRECONDITION` when the element has an
/// infinite reduction.
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_normalize(
    sys: *const ArsSystem,
    element_index: usize,
    fuel: usize,
    out: *mut *mut ArsPath,
) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        let a = match element(&sys.ars, element_index) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let fuel = if fuel == 0 { ample_fuel(&sys.ars) } else { fuel };
        match normalize_finite(&sys.ars, a, fuel) {
            Ok(path) => {
                *out = boxed_path(&path);
                ArsStatus::Ok
            }
            Err(e) => status_of(&e, Some(&sys.ars)),
        }
    })
}

fn boxed_path(p: &PathWitness) -> *mut ArsPath {
    Box::into_raw(Box::new(ArsPath {
        nodes: p.nodes().iter().map(|e| e.index()).collect(),
    }))
}

/// Join the peak `left <-* apex ->* right`, writing the two valley paths.
/// Returns `ARS_STATUS_FAILS` when the exhaustive method finds no common
/// reduct, `ARS_STATUS_PRECONDITION` when a construction's hypotheses fail.
///
/// # Safety
/// `sys` live; `from_left` and `from_right` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_join(
    sys: *const ArsSystem,
    apex: usize,
    left: usize,
    right: usize,
    method: u32,
    from_left: *mut *mut ArsPath,
    from_right: *mut *mut ArsPath,
) -> ArsStatus {
    guard(|| {
        let (Some(sys), false, false) = (sys.as_ref(), from_left.is_null(), from_right.is_null()) else {
            return null();
        };
        let ars = &sys.ars;
        let ids = [apex, left, right].map(|i| element(ars, i));
        let [a, l, r] = match ids {
            [Ok(a), Ok(l), Ok(r)] => [a, l, r],
            _ => return ArsStatus::InvalidInput,
        };
        if let Some(to) = [l, r].into_iter().find(|&to| path_between(ars, a, to).is_none()) {
            return status_of(
                &Error::PreconditionFailed(Precondition::NotReachable { from: a, to }),
                Some(ars),
            );
        }
        let method = match method {
            0 => ArsJoinMethod::Newman,
            1 => ArsJoinMethod::GeneralizedNewman,
            2 => ArsJoinMethod::WnUn,
            3 => ArsJoinMethod::Exhaustive,
            m => {
                set_error(format!("unknown join method {m}"));
                return ArsStatus::InvalidInput;
            }
        };
        let peak = Peak::between(ars, a, l, r).expect("both sides reachable");
        let fuel = ample_fuel(ars);
        let joined = match method {
            ArsJoinMethod::Newman => newman_join(ars, &peak, fuel),
            ArsJoinMethod::GeneralizedNewman => generalized_newman_join(ars, &peak, fuel),
            ArsJoinMethod::WnUn => wn_un_join(ars, &peak),
            ArsJoinMethod::Exhaustive => match join_pair(ars, l, r) {
                Some(j) => Ok(j),
                None => {
                    set_error(format!("{} and {} have no common reduct", ars.name(l), ars.name(r)));
                    return ArsStatus::Fails;
                }
            },
        };
        match joined {
            Ok(j) => {
                *from_left = boxed_path(&j.from_left);
                *from_right = boxed_path(&j.from_right);
                ArsStatus::Ok
            }
            Err(e) => status_of(&e, Some(ars)),
        }
    })
}

/// Number of elements on the path (steps + 1); 0 for NULL.
///
/// # Safety
/// `path` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn ars_path_len(path: *const ArsPath) -> usize {
    path.as_ref().map_or(0, |p| p.nodes.len())
}

/// Element index at position `i`, or `SIZE_MAX` when out of range.
///
/// # Safety
/// `path` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn ars_path_at(path: *const ArsPath, i: usize) -> usize {
    path.as_ref()
        .and_then(|p| p.nodes.get(i).copied())
        .unwrap_or(usize::MAX)
}

/// # Safety
/// `path` must be NULL or come from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ars_path_free(path: *mut ArsPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Whether the converse of the step relation is well-founded, decided by
/// all notions at once; fails with `ARS_STATUS_INVALID_INPUT` when the system
/// has more than `limit` elements (predicates are enumerated).
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ars_well_founded(sys: *const ArsSystem, limit: usize, out: *mut bool) -> ArsStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return null();
        };
        match wf_equivalence_report(&sys.ars, limit) {
            Ok(r) if r.agreement => {
                *out = r.well_founded();
                ArsStatus::Ok
            }
            Ok(_) => {
                set_error("well-foundedness notions disagree".to_string());
                ArsStatus::Internal
            }
            Err(e) => status_of(&e, Some(&sys.ars)),
        }
    })
}
