//! C ABI for the spherical-fermat library.
//!
//! Handles are opaque pointers owned by the library; every function that can
//! fail returns an `SfStatus` and writes results through out-pointers. All
//! returned strings are NUL-terminated, UTF-8, and must be released with
//! `sf_string_free`.

use spherical_fermat::belyi::{self, BelyiMapData};
use spherical_fermat::constants::{aut_size_seeded, constant_report};
use spherical_fermat::defects::defect_profile;
use spherical_fermat::enumerate::count_image;
use spherical_fermat::points::{in_omega, ProjPoint, Signature};
use spherical_fermat::volume::volume;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    /// a required pointer argument was NULL
    NullArgument = 1,
    /// malformed input (bad UTF-8, bad JSON, unknown name, bad signature)
    InvalidInput = 2,
    /// a domain error (ramified fiber, non-spherical signature, …)
    DomainError = 3,
    /// an evaluation budget or height cap was exceeded
    BudgetExceeded = 4,
    /// an internal invariant failed
    InternalError = 5,
}

/// Opaque handle to a validated map.
pub struct SfMap {
    inner: BelyiMapData,
}

fn guard<F: FnOnce() -> SfStatus>(f: F) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => SfStatus::InternalError,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn give_string(s: String, out: *mut *mut c_char) -> SfStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SfStatus::Ok
        }
        Err(_) => SfStatus::InternalError,
    }
}

/// Looks a map up in the built-in catalog. Returns NULL for unknown names.
#[no_mangle]
pub unsafe extern "C" fn sf_map_by_name(name: *const c_char) -> *mut SfMap {
    let Some(name) = read_str(name) else { return ptr::null_mut() };
    match belyi::catalog_by_name(name) {
        Some(m) => Box::into_raw(Box::new(SfMap { inner: m.clone() })),
        None => ptr::null_mut(),
    }
}

/// Validates a map given as a JSON record {"name", "sig", "phi0", "phiInf"}.
#[no_mangle]
pub unsafe extern "C" fn sf_map_from_json(
    json: *const c_char,
    out: *mut *mut SfMap,
) -> SfStatus {
    if out.is_null() {
        return SfStatus::NullArgument;
    }
    let Some(text) = read_str(json) else { return SfStatus::NullArgument };
    guard(|| {
        let record: Result<belyi::RawMapRecord, _> = serde_json::from_str(text);
        let Ok(record) = record else { return SfStatus::InvalidInput };
        match record.validate() {
            Ok(m) => {
                *out = Box::into_raw(Box::new(SfMap { inner: m }));
                SfStatus::Ok
            }
            Err(_) => SfStatus::DomainError,
        }
    })
}

/// Releases a map handle. NULL is allowed.
#[no_mangle]
pub unsafe extern "C" fn sf_map_free(map: *mut SfMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Releases a string returned by this library. NULL is allowed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// deg φ; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn sf_map_degree(map: *const SfMap) -> u32 {
    map.as_ref().map_or(0, |m| m.inner.degree() as u32)
}

/// Writes the signature (a, b, c).
#[no_mangle]
pub unsafe extern "C" fn sf_map_signature(
    map: *const SfMap,
    a: *mut u32,
    b: *mut u32,
    c: *mut u32,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), a.is_null() || b.is_null() || c.is_null()) else {
        return SfStatus::NullArgument;
    };
    *a = m.inner.sig.a;
    *b = m.inner.sig.b;
    *c = m.inner.sig.c;
    SfStatus::Ok
}

/// Map name as a fresh string.
#[no_mangle]
pub unsafe extern "C" fn sf_map_name(map: *const SfMap, out: *mut *mut c_char) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), out.is_null()) else {
        return SfStatus::NullArgument;
    };
    give_string(m.inner.name.clone(), out)
}

/// |Res(φ₀, φ∞)| as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn sf_map_resultant(
    map: *const SfMap,
    out: *mut *mut c_char,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), out.is_null()) else {
        return SfStatus::NullArgument;
    };
    guard(|| give_string(m.inner.resultant().to_string(), out))
}

/// Defect profile as JSON: {"resultant": "…", "defects": {"e": "num/den"}}.
#[no_mangle]
pub unsafe extern "C" fn sf_defects_json(
    map: *const SfMap,
    out: *mut *mut c_char,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), out.is_null()) else {
        return SfStatus::NullArgument;
    };
    guard(|| {
        let profile = defect_profile(&m.inner);
        let defects: serde_json::Map<String, serde_json::Value> = profile
            .defects
            .iter()
            .map(|(e, d)| (e.to_string(), serde_json::Value::String(d.to_string())))
            .collect();
        let value = serde_json::json!({
            "resultant": profile.resultant.to_string(),
            "defects": defects,
        });
        give_string(value.to_string(), out)
    })
}

/// vol(R_φ) by adaptive quadrature.
#[no_mangle]
pub unsafe extern "C" fn sf_volume(
    map: *const SfMap,
    tol: f64,
    value: *mut f64,
    error_bound: *mut f64,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), value.is_null() || error_bound.is_null()) else {
        return SfStatus::NullArgument;
    };
    guard(|| match volume(&m.inner, tol) {
        Ok(v) => {
            *value = v.value;
            *error_bound = v.error_bound;
            SfStatus::Ok
        }
        Err(spherical_fermat::volume::VolumeError::Budget(_)) => SfStatus::BudgetExceeded,
        Err(_) => SfStatus::InvalidInput,
    })
}

/// #Aut(φ) by deterministic fiber sampling.
#[no_mangle]
pub unsafe extern "C" fn sf_aut(
    map: *const SfMap,
    trials: usize,
    seed: u64,
    out: *mut u32,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), out.is_null()) else {
        return SfStatus::NullArgument;
    };
    guard(|| match aut_size_seeded(&m.inner, trials, seed) {
        Ok(n) => {
            *out = n as u32;
            SfStatus::Ok
        }
        Err(_) => SfStatus::DomainError,
    })
}

/// Full constant report: vol, Σδₑe^(2/d), #Aut, δ(φ), κ(φ).
#[no_mangle]
pub unsafe extern "C" fn sf_constants(
    map: *const SfMap,
    tol: f64,
    vol: *mut f64,
    sum_term: *mut f64,
    aut: *mut u32,
    delta: *mut f64,
    kappa: *mut f64,
) -> SfStatus {
    let nulls = vol.is_null() || sum_term.is_null() || aut.is_null() || delta.is_null() || kappa.is_null();
    let (Some(m), false) = (map.as_ref(), nulls) else {
        return SfStatus::NullArgument;
    };
    guard(|| match constant_report(&m.inner, tol) {
        Ok(r) => {
            *vol = r.vol;
            *sum_term = r.sum_term;
            *aut = r.aut_size as u32;
            *delta = r.delta;
            *kappa = r.kappa;
            SfStatus::Ok
        }
        Err(_) => SfStatus::DomainError,
    })
}

/// Image count up to a height: distinct points and the weighted count N(h).
#[no_mangle]
pub unsafe extern "C" fn sf_count_image(
    map: *const SfMap,
    height: u64,
    n_points: *mut u64,
    weighted: *mut u64,
) -> SfStatus {
    let (Some(m), false) = (map.as_ref(), n_points.is_null() || weighted.is_null()) else {
        return SfStatus::NullArgument;
    };
    guard(|| match count_image(&m.inner, height) {
        Ok(img) => {
            *n_points = img.n_points() as u64;
            *weighted = img.weighted();
            SfStatus::Ok
        }
        Err(_) => SfStatus::BudgetExceeded,
    })
}

/// Ω_S(a,b,c) membership of a point "m/n". Writes 1 or 0.
#[no_mangle]
pub unsafe extern "C" fn sf_in_omega(
    point: *const c_char,
    a: u32,
    b: u32,
    c: u32,
    s_primes: *const u64,
    s_len: usize,
    out: *mut i32,
) -> SfStatus {
    if out.is_null() || (s_primes.is_null() && s_len > 0) {
        return SfStatus::NullArgument;
    }
    let Some(text) = read_str(point) else { return SfStatus::NullArgument };
    guard(|| {
        let Ok(q) = text.parse::<ProjPoint>() else { return SfStatus::InvalidInput };
        let Ok(sig) = Signature::new(a, b, c) else { return SfStatus::InvalidInput };
        let s = if s_len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(s_primes, s_len)
        };
        *out = in_omega(&q, sig, s) as i32;
        SfStatus::Ok
    })
}
