//! C ABI for strataforge.
//!
//! Every fallible function returns an [`SfStatus`] and writes its result
//! through an out-pointer. On failure the message of the last error on the
//! calling thread is available from [`sf_last_error_message`]. Objects are
//! exposed as opaque handles that must be released with the matching
//! `*_free` function; strings returned by the library must be released
//! with [`sf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use strataforge::filling::{self, FactFile, Flag, GridBounds, GridStatus};
use strataforge::rewrite::{parse_poly, GradedPoly, Preset, Rewriter};
use strataforge::{bounds, graph, hurwitz, Error, StableGraph};

/// Result codes. Zero is success; each library error family has its own code.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    IndexOutOfRange = 3,
    Graph = 10,
    Strata = 11,
    Fill = 12,
    Hurwitz = 13,
    Bound = 14,
    Rewrite = 15,
    Config = 16,
    Panic = 99,
}

/// Kind of statement queried on a fill result.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfFlag {
    Open = 0,
    RationalTails = 1,
    CompactType = 2,
    Bar = 3,
}

impl From<SfFlag> for Flag {
    fn from(f: SfFlag) -> Flag {
        match f {
            SfFlag::Open => Flag::Open,
            SfFlag::RationalTails => Flag::Rt,
            SfFlag::CompactType => Flag::Ct,
            SfFlag::Bar => Flag::Bar,
        }
    }
}

/// An ordered list of stable graphs.
pub struct SfGraphSet {
    graphs: Vec<StableGraph>,
}

/// The fixed point of the filling rules over a set of facts.
pub struct SfFillResult {
    status: GridStatus,
}

/// A normal-form engine for one preset and number of markings.
pub struct SfRewriter {
    inner: Rewriter,
}

/// An exact polynomial.
pub struct SfPoly {
    inner: GradedPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(err: Error) -> SfStatus {
    let status = match &err {
        Error::Graph(_) => SfStatus::Graph,
        Error::Strata(_) => SfStatus::Strata,
        Error::Fill(_) => SfStatus::Fill,
        Error::Hurwitz(_) => SfStatus::Hurwitz,
        Error::Bound(_) => SfStatus::Bound,
        Error::Rewrite(_) => SfStatus::Rewrite,
        Error::Config(_) => SfStatus::Config,
    };
    set_error(format!("{}: {}", err.name(), err));
    status
}

/// Runs `f`, converting panics and recording error messages.
fn guard<F>(f: F) -> SfStatus
where
    F: FnOnce() -> Result<(), SfStatus>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("Panic: internal error".into());
            SfStatus::Panic
        }
    }
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), SfStatus> {
    if p.is_null() {
        set_error(format!("NullPointer: {what} is null"));
        Err(SfStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SfStatus> {
    null_check(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("InvalidUtf8: {what} is not UTF-8"));
        SfStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SfStatus> {
    null_check(out, "output pointer")?;
    out.write(value);
    Ok(())
}

fn lift<T, E: Into<Error>>(r: Result<T, E>) -> Result<T, SfStatus> {
    r.map_err(|e| fail(e.into()))
}

/// Message of the last error on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- graphs ----

/// Enumerates all stable graphs of type `(g, n)` with `3g - 3 + n <= cap`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graphs_enumerate(g: u32, n: u32, cap: u32, out: *mut *mut SfGraphSet) -> SfStatus {
    guard(|| {
        null_check(out, "out")?;
        let graphs = lift(graph::enumerate(g, n, cap))?;
        write_out(out, Box::into_raw(Box::new(SfGraphSet { graphs })))
    })
}

/// Number of graphs in the set, or 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_set_len(set: *const SfGraphSet) -> usize {
    set.as_ref().map_or(0, |s| s.graphs.len())
}

unsafe fn graph_at<'a>(set: *const SfGraphSet, index: usize) -> Result<&'a StableGraph, SfStatus> {
    null_check(set, "set")?;
    let graphs = &(*set).graphs;
    graphs.get(index).ok_or_else(|| {
        set_error(format!("IndexOutOfRange: index {index} of {}", graphs.len()));
        SfStatus::IndexOutOfRange
    })
}

/// JSON serialization of graph `index`. Free with [`sf_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_set_json(set: *const SfGraphSet, index: usize, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let gr = graph_at(set, index)?;
        write_out(out, to_c(gr.to_json()))
    })
}

/// Hex canonical key of graph `index`. Free with [`sf_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_set_key(set: *const SfGraphSet, index: usize, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let gr = graph_at(set, index)?;
        write_out(out, to_c(gr.canonical_key().to_hex()))
    })
}

/// Order of the automorphism group of graph `index`, acting on half-edges.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_set_automorphisms(set: *const SfGraphSet, index: usize, out: *mut u64) -> SfStatus {
    guard(|| {
        let gr = graph_at(set, index)?;
        write_out(out, gr.automorphism_count())
    })
}

/// # Safety
/// `set` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_set_free(set: *mut SfGraphSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

// ---- filling ----

/// Propagates the filling rules over `facts_json` (null selects the
/// built-in fact table) on the grid `g <= max_g`, `n <= max_n`.
///
/// # Safety
/// `facts_json` must be null or a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_fill_run(
    facts_json: *const c_char,
    max_g: u32,
    max_n: u32,
    out: *mut *mut SfFillResult,
) -> SfStatus {
    guard(|| {
        null_check(out, "out")?;
        let text = if facts_json.is_null() { strataforge::cli::DEFAULT_FACTS } else { read_str(facts_json, "facts_json")? };
        let facts = lift(FactFile::from_json(text))?;
        let status = lift(filling::propagate(&facts, GridBounds { max_g, max_n }))?;
        write_out(out, Box::into_raw(Box::new(SfFillResult { status })))
    })
}

/// Whether `flag` was derived at `(g, n)`.
///
/// # Safety
/// `res` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_fill_holds(res: *const SfFillResult, flag: SfFlag, g: u32, n: u32, out: *mut bool) -> SfStatus {
    guard(|| {
        null_check(res, "result")?;
        write_out(out, (*res).status.holds(flag.into(), g, n))
    })
}

/// Largest `n` with `flag` at genus `g`, or -1 if there is none.
///
/// # Safety
/// `res` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_fill_height(res: *const SfFillResult, flag: SfFlag, g: u32, out: *mut i64) -> SfStatus {
    guard(|| {
        null_check(res, "result")?;
        write_out(out, (*res).status.height(flag.into(), g).map_or(-1, i64::from))
    })
}

/// Text chart of the grid. Free with [`sf_string_free`].
///
/// # Safety
/// `res` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_fill_chart(res: *const SfFillResult, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        null_check(res, "result")?;
        write_out(out, to_c((*res).status.chart().to_text()))
    })
}

/// # Safety
/// `res` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_fill_free(res: *mut SfFillResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

// ---- rewriting ----

/// Builds a rewriter for a preset such as `"trig:4"` and `n` markings.
///
/// # Safety
/// `preset` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_rewriter_new(preset: *const c_char, n: u32, out: *mut *mut SfRewriter) -> SfStatus {
    guard(|| {
        null_check(out, "out")?;
        let preset: Preset = lift(read_str(preset, "preset")?.parse::<Preset>())?;
        let inner = lift(Rewriter::new(preset, n))?;
        write_out(out, Box::into_raw(Box::new(SfRewriter { inner })))
    })
}

/// # Safety
/// `rw` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_rewriter_free(rw: *mut SfRewriter) {
    if !rw.is_null() {
        drop(Box::from_raw(rw));
    }
}

/// Parses a polynomial expression.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_parse(text: *const c_char, out: *mut *mut SfPoly) -> SfStatus {
    guard(|| {
        null_check(out, "out")?;
        let inner = lift(parse_poly(read_str(text, "text")?))?;
        write_out(out, Box::into_raw(Box::new(SfPoly { inner })))
    })
}

/// Printable (and re-parseable) form of a polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_to_string(p: *const SfPoly, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        null_check(p, "poly")?;
        write_out(out, to_c((*p).inner.to_string()))
    })
}

/// Whether the polynomial is zero.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_is_zero(p: *const SfPoly, out: *mut bool) -> SfStatus {
    guard(|| {
        null_check(p, "poly")?;
        write_out(out, (*p).inner.is_zero())
    })
}

/// # Safety
/// `p` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_free(p: *mut SfPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Normal form of `p` modulo the rewriter's relations, as a new handle.
///
/// # Safety
/// `rw` and `p` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_rewriter_normal_form(rw: *const SfRewriter, p: *const SfPoly, out: *mut *mut SfPoly) -> SfStatus {
    guard(|| {
        null_check(rw, "rewriter")?;
        null_check(p, "poly")?;
        null_check(out, "out")?;
        let inner = lift((*rw).inner.normal_form(&(*p).inner))?;
        write_out(out, Box::into_raw(Box::new(SfPoly { inner })))
    })
}

// ---- bounds and profiles ----

/// Point-independence bound for trigonal curves of genus `g`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_bound_trigonal(g: u32, out: *mut i64) -> SfStatus {
    guard(|| write_out(out, bounds::trigonal_bound(g).bound))
}

/// Genus and point-independence bound for plane curves of degree `d`.
///
/// # Safety
/// `out_genus` and `out_bound` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_bound_plane(d: u32, out_genus: *mut u32, out_bound: *mut i64) -> SfStatus {
    guard(|| {
        null_check(out_genus, "out_genus")?;
        null_check(out_bound, "out_bound")?;
        let (g, b) = lift(bounds::plane_bound(d))?;
        write_out(out_genus, g)?;
        write_out(out_bound, b)
    })
}

/// Point-independence bound for tetragonal curves of genus `g` whose
/// splitting type starts with `f1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_bound_tetragonal(g: u32, f1: u32, out: *mut i64) -> SfStatus {
    guard(|| {
        null_check(out, "out")?;
        let b = lift(bounds::tetragonal_bound(g, f1))?;
        write_out(out, b)
    })
}

/// Number of branch points and total number of ramification points of
/// the degree-`k` genus-`g` profile with one point of extra ramification `a`.
///
/// # Safety
/// `out_m` and `out_total` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_fph_profile(k: u32, g: u32, a: u32, out_m: *mut u32, out_total: *mut u64) -> SfStatus {
    guard(|| {
        null_check(out_m, "out_m")?;
        null_check(out_total, "out_total")?;
        let p = lift(hurwitz::fph_profile(k, g, a))?;
        write_out(out_m, p.m)?;
        write_out(out_total, p.n_total)
    })
}
