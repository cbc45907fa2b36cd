//! C ABI for flowdex.
//!
//! Every function returns a [`FlowdexStatus`]; on failure the message is
//! available from [`flowdex_last_error`] on the same thread. Objects are
//! opaque and must be released with their `_free` function. Strings
//! returned to the caller are released with [`flowdex_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flowdex::analysis::{crossover_p0, g_funcs, phi_interval};
use flowdex::intflow::{find_int_nzf_with, SearchOptions};
use flowdex::opt::{optimize, OptimizerConfig};
use flowdex::vector::{
    certify_omega, six_flow_omega, table1_vectors, verify_certificate, FlowCertificate, PNorm, Table1Column,
};
use flowdex::{named, parse_graph, Error, MultiGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowdexStatus {
    Ok = 0,
    NotFound = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    ParseError = 4,
    VerificationFailed = 5,
    NullPointer = 6,
    Internal = 7,
}

/// Opaque multigraph.
pub struct FlowdexGraph(MultiGraph);

/// Opaque flow certificate.
pub struct FlowdexCertificate(FlowCertificate);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FlowdexGSample {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub min_g: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> FlowdexStatus {
    match e {
        Error::BudgetExceeded { .. } => FlowdexStatus::BudgetExceeded,
        Error::Parse { .. } | Error::Format { .. } => FlowdexStatus::ParseError,
        Error::NotFound(_) => FlowdexStatus::NotFound,
        Error::InvalidParameter(_) | Error::DimensionMismatch { .. } | Error::Bridge(_) => {
            FlowdexStatus::InvalidArgument
        }
        _ => FlowdexStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<FlowdexStatus, (FlowdexStatus, String)>) -> FlowdexStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            FlowdexStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (FlowdexStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (FlowdexStatus, String) {
    (FlowdexStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (FlowdexStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (FlowdexStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn pnorm(p: f64) -> Result<PNorm, (FlowdexStatus, String)> {
    PNorm::new(p).map_err(lib_err)
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn flowdex_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn flowdex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text graph format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_graph_parse(text: *const c_char, out: *mut *mut FlowdexGraph) -> FlowdexStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = parse_graph(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FlowdexGraph(g)));
        Ok(FlowdexStatus::Ok)
    })
}

/// Builds a named graph such as `petersen`, `k4`, `k33` or `c5`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_graph_named(name: *const c_char, out: *mut *mut FlowdexGraph) -> FlowdexStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g =
            named::by_name(name).ok_or_else(|| (FlowdexStatus::InvalidArgument, format!("unknown graph {name:?}")))?;
        *out = Box::into_raw(Box::new(FlowdexGraph(g)));
        Ok(FlowdexStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a graph from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowdex_graph_free(g: *mut FlowdexGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid graph.
#[no_mangle]
pub unsafe extern "C" fn flowdex_graph_vertex_count(g: *const FlowdexGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a valid graph.
#[no_mangle]
pub unsafe extern "C" fn flowdex_graph_edge_count(g: *const FlowdexGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Searches for a nowhere-zero `k`-flow. On success writes the tail, head
/// and value of every edge into the caller's arrays, each of length
/// `flowdex_graph_edge_count(g)`. Returns `NOT_FOUND` when none exists.
/// A `budget` of 0 uses the default.
///
/// # Safety
/// `g` must be a valid graph and the output arrays must hold `m` elements.
#[no_mangle]
pub unsafe extern "C" fn flowdex_find_int_nzf(
    g: *const FlowdexGraph,
    k: u32,
    budget: u64,
    tails: *mut usize,
    heads: *mut usize,
    values: *mut i64,
) -> FlowdexStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        if tails.is_null() || heads.is_null() || values.is_null() {
            return Err(null("output array"));
        }
        let mut opts = SearchOptions::from_env();
        if budget > 0 {
            opts.node_budget = budget;
        }
        match find_int_nzf_with(g, k, &opts).map_err(lib_err)? {
            None => Err((FlowdexStatus::NotFound, format!("no nowhere-zero {k}-flow"))),
            Some(f) => {
                for e in 0..g.edge_count() {
                    *tails.add(e) = f.orientation.tail(e);
                    *heads.add(e) = f.orientation.head(e);
                    *values.add(e) = f.values[e];
                }
                Ok(FlowdexStatus::Ok)
            }
        }
    })
}

/// Builds the six-flow construction with one of the vector columns
/// (`d2-anyp`, `d3-anyp`, `d3-inf`, `d3-one`) and certifies it at `p`
/// (`INFINITY` allowed).
///
/// # Safety
/// `g` must be a valid graph, `column` a NUL-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_build_six_flow(
    g: *const FlowdexGraph,
    column: *const c_char,
    p: f64,
    out: *mut *mut FlowdexCertificate,
) -> FlowdexStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        let column: Table1Column = read_str(column, "column")?.parse().map_err(lib_err)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = pnorm(p)?;
        let sym = six_flow_omega(g, &SearchOptions::from_env()).map_err(lib_err)?;
        let triple = table1_vectors(column, p).map_err(lib_err)?;
        let prov = format!("six-flow decomposition with column {column}");
        let cert = certify_omega(g, &sym, &triple.assignment, p, &prov).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FlowdexCertificate(cert)));
        Ok(FlowdexStatus::Ok)
    })
}

/// Multi-start search for a `d`-dimensional flow with small norm ratio.
///
/// # Safety
/// `g` must be a valid graph; `out_r` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_optimize(
    g: *const FlowdexGraph,
    d: usize,
    p: f64,
    restarts: usize,
    seed: u64,
    out_r: *mut f64,
    out: *mut *mut FlowdexCertificate,
) -> FlowdexStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        if out_r.is_null() || out.is_null() {
            return Err(null("output"));
        }
        let cfg = OptimizerConfig {
            restarts,
            seed,
            ..OptimizerConfig::default()
        };
        let res = optimize(g, d, pnorm(p)?, &cfg).map_err(lib_err)?;
        *out_r = res.best_r;
        *out = Box::into_raw(Box::new(FlowdexCertificate(res.certificate)));
        Ok(FlowdexStatus::Ok)
    })
}

/// Parses a certificate from its text form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_parse(
    text: *const c_char,
    out: *mut *mut FlowdexCertificate,
) -> FlowdexStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = FlowCertificate::from_text(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FlowdexCertificate(cert)));
        Ok(FlowdexStatus::Ok)
    })
}

/// Text form of a certificate; free with [`flowdex_string_free`].
///
/// # Safety
/// `cert` must be a valid certificate; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_to_text(
    cert: *const FlowdexCertificate,
    out: *mut *mut c_char,
) -> FlowdexStatus {
    guard(|| {
        let cert = &cert.as_ref().ok_or_else(|| null("certificate"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CString::new(cert.to_text())
            .map_err(|_| (FlowdexStatus::Internal, "certificate text contains NUL".to_string()))?;
        *out = s.into_raw();
        Ok(FlowdexStatus::Ok)
    })
}

/// Returns `OK` when the certificate verifies at `tolerance`, otherwise
/// `VERIFICATION_FAILED` with the itemized report as the last error.
///
/// # Safety
/// `cert` must be a valid certificate.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_verify(cert: *const FlowdexCertificate, tolerance: f64) -> FlowdexStatus {
    guard(|| {
        let cert = &cert.as_ref().ok_or_else(|| null("certificate"))?.0;
        let report = verify_certificate(cert, tolerance);
        if report.is_ok() {
            Ok(FlowdexStatus::Ok)
        } else {
            Err((FlowdexStatus::VerificationFailed, report.to_string()))
        }
    })
}

/// Claimed ratio bound `r`, or NaN for a null pointer.
///
/// # Safety
/// `cert` must be null or a valid certificate.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_r(cert: *const FlowdexCertificate) -> f64 {
    cert.as_ref().map_or(f64::NAN, |c| c.0.claimed_r)
}

/// # Safety
/// `cert` must be a valid certificate.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_dimension(cert: *const FlowdexCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.d)
}

/// # Safety
/// `cert` must be null or a certificate from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowdex_certificate_free(cert: *mut FlowdexCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// `g1`, `g2`, `g3` and their minimum at `p` (`INFINITY` allowed).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_g_funcs(p: f64, out: *mut FlowdexGSample) -> FlowdexStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = g_funcs(pnorm(p)?);
        *out = FlowdexGSample {
            g1: s.g1,
            g2: s.g2,
            g3: s.g3,
            min_g: s.min_g,
        };
        Ok(FlowdexStatus::Ok)
    })
}

/// Crossover of `g1` and `g2` on `[1, 2]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_crossover_p0(out: *mut f64) -> FlowdexStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = crossover_p0().map_err(lib_err)?;
        Ok(FlowdexStatus::Ok)
    })
}

/// Upper bound for `g2` on `[p1, p2]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn flowdex_phi_interval(p1: f64, p2: f64, out: *mut f64) -> FlowdexStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = phi_interval(p1, p2).map_err(lib_err)?;
        Ok(FlowdexStatus::Ok)
    })
}
