//! C ABI over the workbench core.
//!
//! Handles are opaque pointers; every fallible call returns an [`SwStatus`]
//! and writes results through out-pointers. Result payloads cross the
//! boundary as JSON strings (rationals as `"p/q"`), mirroring the CLI, so
//! bindings never need to understand Rust types. Strings returned by this
//! library must be released with [`sw_string_free`], handles with their
//! matching `_free` function.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use spectral_workbench::json as schema;
use spectral_workbench::newton::extend_ap_in_spectrum;
use spectral_workbench::rational::{parse_rational, to_f64};
use spectral_workbench::search::{search_spectra, verify_spectrum, SearchConfig};
use spectral_workbench::structure::decompose;
use spectral_workbench::{expoly, newton};
use spectral_workbench::{Error, IntervalUnion, PeriodicSet};

/// Status codes for every fallible entry point. `SW_OK` is zero so callers
/// can treat the status as a boolean failure flag.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwStatus {
    SwOk = 0,
    /// A required pointer argument was null.
    SwNullArgument = 1,
    /// Input text was not valid JSON for the expected schema.
    SwBadJson = 2,
    /// Structurally valid input violated a precondition (overlap, not a
    /// tiling, window too small, …).
    SwFailedPrecondition = 3,
    /// A search stopped early on its node budget; partial output was still
    /// written.
    SwBudgetExhausted = 4,
    /// A string argument was not valid UTF-8 or not a `p/q` rational.
    SwBadArgument = 5,
}

/// Opaque handle to a finite union of half-open rational intervals.
pub struct SwDomain(IntervalUnion);

/// Opaque handle to a periodic point set `offsets + period·Z`.
pub struct SwPeriodicSet(PeriodicSet);

fn status_of(e: &Error) -> SwStatus {
    match e {
        Error::Json(_) => SwStatus::SwBadJson,
        _ => SwStatus::SwFailedPrecondition,
    }
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for reads.
unsafe fn utf8_arg<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    CStr::from_ptr(s).to_str().ok()
}

fn raw_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn write_json(out_json: *mut *mut c_char, value: &serde_json::Value) {
    // SAFETY: callers null-check out_json before calling.
    unsafe { *out_json = raw_string(value.to_string()) };
}

/// Release a string returned by any `sw_*` function.
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a domain from `{"intervals": [["p/q","p/q"], …]}` JSON and store a
/// new handle in `*out`.
/// # Safety
/// `json` must be a NUL-terminated string valid for reads; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_domain_parse(json: *const c_char, out: *mut *mut SwDomain) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out = ptr::null_mut();
    let Some(text) = utf8_arg(json) else {
        return if json.is_null() {
            SwStatus::SwNullArgument
        } else {
            SwStatus::SwBadArgument
        };
    };
    match schema::parse_domain(text) {
        Ok(domain) => {
            *out = Box::into_raw(Box::new(SwDomain(domain)));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Release a domain handle.
/// # Safety
/// `domain` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_domain_free(domain: *mut SwDomain) {
    if !domain.is_null() {
        drop(Box::from_raw(domain));
    }
}

/// Serialize a domain back to its JSON form. Returns null on null input.
/// # Safety
/// `domain` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sw_domain_to_json(domain: *const SwDomain) -> *mut c_char {
    match domain.as_ref() {
        Some(d) => raw_string(schema::domain_json(&d.0).to_string()),
        None => ptr::null_mut(),
    }
}

/// Translate and rescale to leftmost point 0 and measure 1; stores a new
/// handle in `*out` (the input handle stays valid).
/// # Safety
/// `domain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_domain_normalize(
    domain: *const SwDomain,
    out: *mut *mut SwDomain,
) -> SwStatus {
    if out.is_null() || domain.is_null() {
        return SwStatus::SwNullArgument;
    }
    let (normalized, _) = (*domain).0.normalize();
    *out = Box::into_raw(Box::new(SwDomain(normalized)));
    SwStatus::SwOk
}

/// Total measure of the domain, as a double.
/// # Safety
/// `domain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_domain_measure_f64(domain: *const SwDomain, out: *mut f64) -> SwStatus {
    if domain.is_null() || out.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out = to_f64(&(*domain).0.measure());
    SwStatus::SwOk
}

/// Parse a periodic set from `{"period": "p/q", "offsets": […]}` JSON.
/// # Safety
/// `json` must be a NUL-terminated string valid for reads; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_periodic_set_parse(
    json: *const c_char,
    out: *mut *mut SwPeriodicSet,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out = ptr::null_mut();
    let Some(text) = utf8_arg(json) else {
        return if json.is_null() {
            SwStatus::SwNullArgument
        } else {
            SwStatus::SwBadArgument
        };
    };
    match schema::parse_periodic_set(text) {
        Ok(set) => {
            *out = Box::into_raw(Box::new(SwPeriodicSet(set)));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Release a periodic-set handle.
/// # Safety
/// `set` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_periodic_set_free(set: *mut SwPeriodicSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Serialize a periodic set back to its JSON form. Returns null on null
/// input.
/// # Safety
/// `set` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sw_periodic_set_to_json(set: *const SwPeriodicSet) -> *mut c_char {
    match set.as_ref() {
        Some(s) => raw_string(schema::periodic_set_json(&s.0).to_string()),
        None => ptr::null_mut(),
    }
}

/// Exact spectrum verification; writes the full verdict object as JSON.
/// # Safety
/// `domain` and `set` must be live handles; `out_json` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn sw_verify_spectrum(
    domain: *const SwDomain,
    set: *const SwPeriodicSet,
    out_json: *mut *mut c_char,
) -> SwStatus {
    if domain.is_null() || set.is_null() || out_json.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out_json = ptr::null_mut();
    match verify_spectrum(&(*domain).0, &(*set).0) {
        Ok(verdict) => {
            write_json(out_json, &schema::spectrum_verdict_json(&verdict));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Exact level-`d` tiling check; writes 1 or 0 to `*out_tiles`.
/// # Safety
/// `domain` must be a live handle; `out_tiles` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_verify_tiling(
    domain: *const SwDomain,
    d: u64,
    out_tiles: *mut bool,
) -> SwStatus {
    if domain.is_null() || out_tiles.is_null() {
        return SwStatus::SwNullArgument;
    }
    match newton::verify_tiling(&(*domain).0, d) {
        Ok(tiles) => {
            *out_tiles = tiles;
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Arithmetic-progression extension through the sampled window
/// `set ∩ [lo, hi)`; `lo`, `hi`, `a`, `d` are `"p/q"` strings. Writes the
/// verdict object as JSON.
/// # Safety
/// `domain` and `set` must be live handles; the four rational arguments
/// must be NUL-terminated strings valid for reads; `out_json` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_ap_extend(
    domain: *const SwDomain,
    set: *const SwPeriodicSet,
    lo: *const c_char,
    hi: *const c_char,
    a: *const c_char,
    d: *const c_char,
    out_json: *mut *mut c_char,
) -> SwStatus {
    if domain.is_null() || set.is_null() || out_json.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out_json = ptr::null_mut();
    let mut rationals = Vec::with_capacity(4);
    for arg in [lo, hi, a, d] {
        if arg.is_null() {
            return SwStatus::SwNullArgument;
        }
        let Some(text) = utf8_arg(arg) else {
            return SwStatus::SwBadArgument;
        };
        match parse_rational(text) {
            Ok(x) => rationals.push(x),
            Err(_) => return SwStatus::SwBadArgument,
        }
    }
    let window = match (*set).0.window(&rationals[0], &rationals[1]) {
        Ok(w) => w,
        Err(e) => return status_of(&e),
    };
    match extend_ap_in_spectrum(&(*domain).0, &window, &rationals[2], &rationals[3]) {
        Ok(verdict) => {
            write_json(out_json, &schema::ap_verdict_json(&verdict));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Value of the domain's transform at a real frequency.
/// # Safety
/// `domain` must be a live handle; `out_re` and `out_im` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_transform(
    domain: *const SwDomain,
    xi: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SwStatus {
    if domain.is_null() || out_re.is_null() || out_im.is_null() {
        return SwStatus::SwNullArgument;
    }
    let value = expoly::eval_chi_hat(&(*domain).0, xi);
    *out_re = value.re;
    *out_im = value.im;
    SwStatus::SwOk
}

/// Numeric zero scan of the transform over `[lo, hi]`; writes a JSON array
/// of doubles.
/// # Safety
/// `domain` must be a live handle; `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_scan_zeros(
    domain: *const SwDomain,
    lo: f64,
    hi: f64,
    tol: f64,
    out_json: *mut *mut c_char,
) -> SwStatus {
    if domain.is_null() || out_json.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out_json = ptr::null_mut();
    let poly = match expoly::ExpPolynomial::from_domain(&(*domain).0) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match poly.scan_zeros_numeric(lo, hi, tol) {
        Ok(zeros) => {
            write_json(out_json, &serde_json::json!(zeros));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}

/// Exhaustive periodic-spectrum search up to period `d_max`. `denom` and
/// `budget` of 0 mean "use the default". Writes the outcome object as JSON
/// even when the budget ran out (status `SwBudgetExhausted`).
/// # Safety
/// `domain` must be a live handle; `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_search(
    domain: *const SwDomain,
    d_max: u64,
    denom: u64,
    budget: u64,
    out_json: *mut *mut c_char,
) -> SwStatus {
    if domain.is_null() || out_json.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out_json = ptr::null_mut();
    let mut cfg = SearchConfig::new(d_max);
    if denom > 0 {
        cfg.denominator_bound = Some(denom);
    }
    if budget > 0 {
        cfg.node_budget = budget;
    }
    match search_spectra(&(*domain).0, &cfg) {
        Ok(outcome) => {
            write_json(out_json, &schema::search_outcome_json(&outcome));
            if outcome.exhausted {
                SwStatus::SwBudgetExhausted
            } else {
                SwStatus::SwOk
            }
        }
        Err(e) => status_of(&e),
    }
}

/// Fiber decomposition of a level-`d` tiling domain; writes the
/// decomposition object as JSON.
/// # Safety
/// `domain` must be a live handle; `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_decompose(
    domain: *const SwDomain,
    d: u64,
    out_json: *mut *mut c_char,
) -> SwStatus {
    if domain.is_null() || out_json.is_null() {
        return SwStatus::SwNullArgument;
    }
    *out_json = ptr::null_mut();
    match decompose(&(*domain).0, d) {
        Ok(dec) => {
            write_json(out_json, &schema::decomposition_json(&dec));
            SwStatus::SwOk
        }
        Err(e) => status_of(&e),
    }
}
