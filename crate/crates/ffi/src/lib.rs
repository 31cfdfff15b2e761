//! C ABI over the `gaussint` library.
//!
//! Conventions:
//!
//! * every fallible function returns a [`GiStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure;
//! * the message for the most recent failure on the calling thread is
//!   available from [`gi_last_error_message`];
//! * strings passed in are NUL-terminated UTF-8; strings returned as
//!   `const char *` are static, strings returned as `char *` must be released
//!   with [`gi_string_free`];
//! * queries are opaque [`GiQuery`] handles released with [`gi_query_free`].
//!
//! Panics never cross the boundary: they are caught and reported as
//! [`GiStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use gaussint::catalog::{self, CatalogError, ParamSet};
use gaussint::expr::{self, CompiledExpr, ExprError, IntegralQuery, MatchResult};
use gaussint::quadrature::{self, QuadratureError};
use gaussint::specfun::{self, ComplexValue, SpecFunError};
use gaussint::verifier::{self, ParamsPolicy, ReportFormat, Status};

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownId = 3,
    InvalidParams = 4,
    Domain = 5,
    Parse = 6,
    NoMatch = 7,
    Quadrature = 8,
    Internal = 9,
}

/// Outcome of a single certification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GiVerifyStatus {
    Pass = 0,
    Fail = 1,
    OracleNonconverged = 2,
}

/// Report layout for [`gi_verify_all_report`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GiReportFormat {
    Json = 0,
    Csv = 1,
    Markdown = 2,
}

/// One verification record, without the textual fields.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiRecord {
    pub closed_value: f64,
    pub quad_value: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub status: GiVerifyStatus,
    pub evaluations: usize,
}

/// Quadrature result for a parsed query.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiQuadrature {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// A parsed and normalized integral query.
pub struct GiQuery {
    query: IntegralQuery,
    compiled: CompiledExpr,
    matched: Option<MatchResult>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: GiStatus,
    message: String,
}

impl Failure {
    fn new(status: GiStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        let status = match e {
            CatalogError::UnknownId(_) => GiStatus::UnknownId,
            CatalogError::MissingParam { .. }
            | CatalogError::UnexpectedParam { .. }
            | CatalogError::ParamConstraint { .. } => GiStatus::InvalidParams,
            _ => GiStatus::Domain,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<SpecFunError> for Failure {
    fn from(e: SpecFunError) -> Self {
        Failure::new(GiStatus::Domain, e.to_string())
    }
}

impl From<QuadratureError> for Failure {
    fn from(e: QuadratureError) -> Self {
        Failure::new(GiStatus::Quadrature, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `body`, converting failures and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GiStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GiStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal error: {what}"));
            GiStatus::Internal
        }
    }
}

fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller guarantees `p` is null or valid for writes.
    unsafe { p.as_mut() }.ok_or_else(|| Failure::new(GiStatus::NullPointer, format!("{name} is null")))
}

fn in_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(GiStatus::NullPointer, format!("{name} is null")));
    }
    // SAFETY: non-null and NUL-terminated per the calling convention.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::new(GiStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

fn param_set(names: *const *const c_char, values: *const f64, len: usize) -> Result<ParamSet, Failure> {
    let mut params = ParamSet::new();
    if len == 0 {
        return Ok(params);
    }
    if names.is_null() || values.is_null() {
        return Err(Failure::new(GiStatus::NullPointer, "parameter arrays are null"));
    }
    // SAFETY: both arrays hold `len` elements per the calling convention.
    let (names, values) = unsafe {
        (
            std::slice::from_raw_parts(names, len),
            std::slice::from_raw_parts(values, len),
        )
    };
    for (&n, &v) in names.iter().zip(values) {
        params.set(in_str(n, "parameter name")?, v);
    }
    Ok(params)
}

fn ids() -> &'static [CString] {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    IDS.get_or_init(|| {
        catalog::all_entries()
            .map(|e| CString::new(e.id).expect("ids contain no NUL"))
            .collect()
    })
}

fn static_id(id: &str) -> *const c_char {
    ids()
        .iter()
        .find(|c| c.to_bytes() == id.as_bytes())
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// Message for the last failure on this thread, or NULL if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gi_version() -> *const c_char {
    static VERSION: OnceLock<CString> = OnceLock::new();
    VERSION
        .get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap())
        .as_ptr()
}

/// Γ(x). Fails with `Domain` at poles and on overflow.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_gamma(x: f64, out: *mut f64) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = specfun::gamma(x)?;
        Ok(())
    })
}

/// Real erf on the whole line.
#[no_mangle]
pub extern "C" fn gi_erf(x: f64) -> f64 {
    specfun::erf(x)
}

/// Real erfc on the whole line.
#[no_mangle]
pub extern "C" fn gi_erfc(x: f64) -> f64 {
    specfun::erfc(x)
}

/// Real erfi; ±infinity once the value overflows.
#[no_mangle]
pub extern "C" fn gi_erfi(x: f64) -> f64 {
    specfun::erfi(x)
}

/// Complex erf for |z| ≤ 6.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_erf_complex(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> GiStatus {
    guard(|| {
        let (out_re, out_im) = (out_ref(out_re, "out_re")?, out_ref(out_im, "out_im")?);
        let w = specfun::erf_complex(ComplexValue::new(re, im))?;
        (*out_re, *out_im) = (w.re, w.im);
        Ok(())
    })
}

/// Modified Bessel function of the first kind, I_n(z).
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_bessel_i(n: c_int, z: f64, out: *mut f64) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = specfun::bessel_i(n, z)?;
        Ok(())
    })
}

/// Principal branch of the Lambert W function, x ≥ −1/e.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_lambert_w0(x: f64, out: *mut f64) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = specfun::lambert_w0(x)?;
        Ok(())
    })
}

/// Number of catalog entries, auxiliary entries included.
#[no_mangle]
pub extern "C" fn gi_catalog_len() -> usize {
    ids().len()
}

/// Static id of the entry at `index`, or NULL when out of range.
#[no_mangle]
pub extern "C" fn gi_catalog_id(index: usize) -> *const c_char {
    ids().get(index).map_or(ptr::null(), |c| c.as_ptr())
}

/// Closed-form value of entry `id` with `len` named parameters.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_closed_form(
    id: *const c_char,
    names: *const *const c_char,
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let id = in_str(id, "id")?;
        let params = param_set(names, values, len)?;
        *out = catalog::closed_form_value(id, &params)?;
        Ok(())
    })
}

/// Certifies entry `id` against the quadrature oracle.
///
/// A `tol` of zero or less uses the entry's tolerance class. Oracle failures
/// still produce a record; only argument errors return a non-`Ok` status.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_verify(
    id: *const c_char,
    names: *const *const c_char,
    values: *const f64,
    len: usize,
    tol: f64,
    out: *mut GiRecord,
) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let id = in_str(id, "id")?;
        let params = param_set(names, values, len)?;
        let tol = (tol > 0.0).then_some(tol);
        let r = verifier::verify_entry(id, &params, tol)?;
        *out = GiRecord {
            closed_value: r.closed_value,
            quad_value: r.quad_value,
            abs_diff: r.abs_diff,
            tol: r.tol,
            status: match r.status {
                Status::Pass => GiVerifyStatus::Pass,
                Status::Fail => GiVerifyStatus::Fail,
                Status::OracleNonconverged => GiVerifyStatus::OracleNonconverged,
            },
            evaluations: r.evaluations,
        };
        Ok(())
    })
}

/// Verifies the whole catalog over the default parameter grids and writes
/// the report to `*out`, to be released with [`gi_string_free`].
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_verify_all_report(format: GiReportFormat, out: *mut *mut c_char) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let format = match format {
            GiReportFormat::Json => ReportFormat::Json,
            GiReportFormat::Csv => ReportFormat::Csv,
            GiReportFormat::Markdown => ReportFormat::Markdown,
        };
        let records = verifier::verify_all(&ParamsPolicy::default());
        let mut buf = Vec::new();
        verifier::emit_report(&records, format, &mut buf)
            .map_err(|e| Failure::new(GiStatus::Internal, e.to_string()))?;
        let text = CString::new(buf).map_err(|_| Failure::new(GiStatus::Internal, "report contains NUL"))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses `text` into a new query handle.
///
/// On a parse error the status is `Parse`, and if `error_pos` is non-NULL it
/// receives the 1-based character position of the problem.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_parse(
    text: *const c_char,
    out: *mut *mut GiQuery,
    error_pos: *mut usize,
) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let text = in_str(text, "text")?;
        let query = expr::parse(text).map_err(|e: ExprError| {
            // SAFETY: the caller guarantees `error_pos` is null or writable.
            if let Some(pos) = unsafe { error_pos.as_mut() } {
                *pos = e.position();
            }
            Failure::new(GiStatus::Parse, e.to_string())
        })?;
        let query = expr::normalize(&query);
        let handle = GiQuery {
            compiled: expr::compile(&query.integrand),
            matched: expr::match_catalog(&query),
            query,
        };
        *out = Box::into_raw(Box::new(handle));
        Ok(())
    })
}

/// Releases a query handle. NULL is ignored.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_free(q: *mut GiQuery) {
    if !q.is_null() {
        // SAFETY: `q` came from `gi_query_parse` and is released once.
        drop(unsafe { Box::from_raw(q) });
    }
}

fn query_ref<'a>(q: *const GiQuery) -> Result<&'a GiQuery, Failure> {
    // SAFETY: the caller guarantees `q` is null or a live handle.
    unsafe { q.as_ref() }.ok_or_else(|| Failure::new(GiStatus::NullPointer, "query is null"))
}

fn matched(q: &GiQuery) -> Result<&MatchResult, Failure> {
    q.matched
        .as_ref()
        .ok_or_else(|| Failure::new(GiStatus::NoMatch, format!("no catalog entry matches {}", q.query)))
}

/// Static id of the catalog entry the query matches; `NoMatch` otherwise.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_match(q: *const GiQuery, id: *mut *const c_char) -> GiStatus {
    guard(|| {
        let id = out_ref(id, "id")?;
        *id = static_id(matched(query_ref(q)?)?.entry_id);
        Ok(())
    })
}

/// Value of parameter `name` bound by the match.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_param(q: *const GiQuery, name: *const c_char, out: *mut f64) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let name = in_str(name, "name")?;
        let m = matched(query_ref(q)?)?;
        *out = m.bound_params.get(name).ok_or_else(|| {
            Failure::new(
                GiStatus::InvalidParams,
                format!("{} binds no parameter {name}", m.entry_id),
            )
        })?;
        Ok(())
    })
}

/// Closed-form value of the matched entry at the bound parameters.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_closed_form(q: *const GiQuery, out: *mut f64) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let m = matched(query_ref(q)?)?;
        *out = catalog::closed_form_value(m.entry_id, &m.bound_params)?;
        Ok(())
    })
}

/// Integrates the query's integrand numerically to absolute tolerance `tol`,
/// splitting at the matched entry's breakpoints when there is a match.
///
/// # Safety
///
/// Pointer arguments must be NULL or valid as described in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn gi_query_integrate(q: *const GiQuery, tol: f64, out: *mut GiQuadrature) -> GiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let q = query_ref(q)?;
        let breakpoints = match &q.matched {
            Some(m) => catalog::lookup(m.entry_id)?.breakpoints,
            None => &[],
        };
        let r = quadrature::integrate_split(q.compiled.as_fn(), &q.query.interval(), breakpoints, tol)?;
        *out = GiQuadrature {
            value: r.value,
            abs_error_estimate: r.abs_error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
        };
        Ok(())
    })
}
