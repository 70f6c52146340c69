//! C ABI over `thetacut`.
//!
//! Objects are opaque heap handles created by `tc_*_new`/`tc_*_zoo`/... and
//! released with the matching `tc_*_free`. Fallible calls return a
//! [`TcStatus`] and write results through out-pointers; on failure
//! `tc_last_error_message` describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use thetacut::analysis::{self, Verdict};
use thetacut::matroid::zoo;
use thetacut::moment::MomentTemplate;
use thetacut::sdp::{self, Sense, SolverSettings, Status, ThetaSolution};
use thetacut::{BinaryMatroid, Error, Gf2Matrix, Graph, Side};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    InvalidArgument = 1,
    BudgetExceeded = 2,
    ParseError = 3,
    IoError = 4,
    UnknownName = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcSide {
    Cycles = 0,
    Cocycles = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcSense {
    Maximize = 0,
    Minimize = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcSolveStatus {
    Optimal = 0,
    MaxIterations = 1,
    InfeasibleDetected = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcVerdict {
    Exact = 0,
    NotExact = 1,
    Inconclusive = 2,
}

/// Result of a relaxation solve. `bound` is certified; `value` is attained by a feasible point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcBoundResult {
    pub bound: f64,
    pub value: f64,
    pub status: TcSolveStatus,
    pub iterations: u64,
    /// Side of the solved moment matrix; 0 when nothing was left to solve.
    pub side: usize,
}

pub struct TcGraph(Graph);

pub struct TcMatroid(BinaryMatroid);

pub struct TcTemplate(MomentTemplate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn status_of(e: &Error) -> TcStatus {
    if e.is_budget() {
        return TcStatus::BudgetExceeded;
    }
    match e {
        Error::Parse(_) => TcStatus::ParseError,
        Error::Io(_) => TcStatus::IoError,
        Error::UnknownZoo(_) => TcStatus::UnknownName,
        _ => TcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TcStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (TcStatus::Ok, String::new()),
        Ok(Err(Failure::Lib(e))) => (status_of(&e), e.to_string()),
        Ok(Err(Failure::Null(what))) => (TcStatus::NullPointer, format!("{what} is null")),
        Ok(Err(Failure::Invalid(msg))) => (TcStatus::InvalidArgument, msg),
        Err(_) => (TcStatus::Panic, "internal panic".to_string()),
    };
    set_error(&msg);
    status
}

unsafe fn reference<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = value;
    Ok(())
}

fn settings(eps: f64) -> SolverSettings {
    if eps > 0.0 && eps.is_finite() {
        SolverSettings::with_tolerance(eps)
    } else {
        SolverSettings::default()
    }
}

fn side(s: TcSide) -> Side {
    match s {
        TcSide::Cycles => Side::Cycle,
        TcSide::Cocycles => Side::Cocycle,
    }
}

fn result(s: &ThetaSolution) -> TcBoundResult {
    TcBoundResult {
        bound: s.bound,
        value: s.value,
        status: match s.status {
            Status::Optimal => TcSolveStatus::Optimal,
            Status::MaxIterations => TcSolveStatus::MaxIterations,
            Status::InfeasibleDetected => TcSolveStatus::InfeasibleDetected,
        },
        iterations: s.iterations as u64,
        side: s.side,
    }
}

fn verdict(v: Verdict) -> TcVerdict {
    match v {
        Verdict::Exact => TcVerdict::Exact,
        Verdict::NotExact => TcVerdict::NotExact,
        Verdict::Inconclusive => TcVerdict::Inconclusive,
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next `tc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `edges` holds `2 * num_edges` vertex indices; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_new(
    num_vertices: usize,
    edges: *const usize,
    num_edges: usize,
    out: *mut *mut TcGraph,
) -> TcStatus {
    guard(|| {
        let flat = slice(edges, 2 * num_edges, "edges")?;
        let pairs = flat.chunks(2).map(|p| (p[0], p[1])).collect();
        store(out, TcGraph(Graph::with_parallel_edges(num_vertices, pairs)?))
    })
}

/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_zoo(name: *const c_char, out: *mut *mut TcGraph) -> TcStatus {
    guard(|| store(out, TcGraph(zoo::graph(string(name, "name")?)?)))
}

/// Parses the edge-list text format (`n m`, then `u v [w]` per edge).
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_parse(text: *const c_char, out: *mut *mut TcGraph) -> TcStatus {
    guard(|| store(out, TcGraph(Graph::parse(string(text, "text")?)?)))
}

/// # Safety
/// `g` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_free(g: *mut TcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_num_vertices(g: *const TcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_num_edges(g: *const TcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// A zoo name; graph names give their cographic matroid.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_zoo(name: *const c_char, out: *mut *mut TcMatroid) -> TcStatus {
    guard(|| store(out, TcMatroid(zoo::matroid(string(name, "name")?)?)))
}

/// `rows` is a row-major `num_rows × num_elements` 0/1 matrix spanning the given side.
///
/// # Safety
/// `rows` holds `num_rows * num_elements` bytes; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_from_rows(
    num_elements: usize,
    rows: *const u8,
    num_rows: usize,
    rows_side: TcSide,
    out: *mut *mut TcMatroid,
) -> TcStatus {
    guard(|| {
        let len = num_rows
            .checked_mul(num_elements)
            .ok_or_else(|| Failure::Invalid("matrix size overflows".into()))?;
        let data = slice(rows, len, "rows")?;
        let dense: Vec<Vec<u8>> = if num_elements == 0 {
            vec![Vec::new(); num_rows]
        } else {
            data.chunks(num_elements).map(<[u8]>::to_vec).collect()
        };
        let matrix = Gf2Matrix::from_dense(num_elements, &dense)?;
        let m = match side(rows_side) {
            Side::Cycle => BinaryMatroid::from_cycle_space(&matrix)?,
            Side::Cocycle => BinaryMatroid::from_cocycle_space(&matrix)?,
        };
        store(out, TcMatroid(m))
    })
}

/// Parses the matrix text format (`r m`, then `r` rows of 0/1).
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_parse(
    text: *const c_char,
    rows_side: TcSide,
    out: *mut *mut TcMatroid,
) -> TcStatus {
    guard(|| store(out, TcMatroid(BinaryMatroid::parse(string(text, "text")?, side(rows_side))?)))
}

/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_graphic(g: *const TcGraph, out: *mut *mut TcMatroid) -> TcStatus {
    guard(|| store(out, TcMatroid(BinaryMatroid::graphic(&reference(g, "graph")?.0))))
}

/// Cycles of the cographic matroid are the cuts of `g`.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_cographic(g: *const TcGraph, out: *mut *mut TcMatroid) -> TcStatus {
    guard(|| store(out, TcMatroid(BinaryMatroid::cographic(&reference(g, "graph")?.0))))
}

/// # Safety
/// `m` is a live matroid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_dual(m: *const TcMatroid, out: *mut *mut TcMatroid) -> TcStatus {
    guard(|| store(out, TcMatroid(reference(m, "matroid")?.0.dual())))
}

/// # Safety
/// `m` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_free(m: *mut TcMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_num_elements(m: *const TcMatroid) -> usize {
    m.as_ref().map_or(0, |m| m.0.m())
}

/// Dimension of the cycle space.
///
/// # Safety
/// `m` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_cycle_rank(m: *const TcMatroid) -> usize {
    m.as_ref().map_or(0, |m| m.0.cycle_rank())
}

/// # Safety
/// `m` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_matroid_cocycle_rank(m: *const TcMatroid) -> usize {
    m.as_ref().map_or(0, |m| m.0.cocycle_rank())
}

/// Optimizes `constant + Σ c_e x_e` over level `k` of the cycle ideal.
/// `eps <= 0` selects the default tolerance.
///
/// # Safety
/// `m` is live; `c` holds `len` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_theta_bound(
    m: *const TcMatroid,
    c: *const f64,
    len: usize,
    constant: f64,
    k: usize,
    sense: TcSense,
    eps: f64,
    out: *mut TcBoundResult,
) -> TcStatus {
    guard(|| {
        let sense = match sense {
            TcSense::Maximize => Sense::Max,
            TcSense::Minimize => Sense::Min,
        };
        let s = sdp::theta_bound(&reference(m, "matroid")?.0, slice(c, len, "c")?, constant, k, sense, &settings(eps))?;
        write(out, result(&s))
    })
}

/// Maximum weight cut over level `k`.
///
/// # Safety
/// `g` is live; `w` holds `len` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_maxcut_bound(
    g: *const TcGraph,
    w: *const f64,
    len: usize,
    k: usize,
    eps: f64,
    out: *mut TcBoundResult,
) -> TcStatus {
    guard(|| {
        let s = sdp::maxcut_bound(&reference(g, "graph")?.0, slice(w, len, "w")?, k, &settings(eps))?;
        write(out, result(&s))
    })
}

/// Goemans-Williamson bound.
///
/// # Safety
/// `g` is live; `w` holds `len` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_gw_bound(
    g: *const TcGraph,
    w: *const f64,
    len: usize,
    eps: f64,
    out: *mut TcBoundResult,
) -> TcStatus {
    guard(|| {
        let s = sdp::gw_bound(&reference(g, "graph")?.0, slice(w, len, "w")?, &settings(eps))?;
        write(out, result(&s))
    })
}

/// Exact maximum cut weight by enumeration.
///
/// # Safety
/// `g` is live; `w` holds `len` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_brute_force_maxcut(
    g: *const TcGraph,
    w: *const f64,
    len: usize,
    out: *mut f64,
) -> TcStatus {
    guard(|| {
        let (v, _) = analysis::brute_force_maxcut(&reference(g, "graph")?.0, slice(w, len, "w")?)?;
        write(out, v)
    })
}

/// Level-one exactness of the cut ideal of `g`.
///
/// # Safety
/// `g` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_th1_exact_graph(g: *const TcGraph, out: *mut TcVerdict) -> TcStatus {
    guard(|| write(out, verdict(analysis::th1_exact_graph_cut_ideal(&reference(g, "graph")?.0)?.verdict)))
}

/// Level-one exactness of the cycle ideal of `m`.
///
/// # Safety
/// `m` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_th1_exact_matroid(m: *const TcMatroid, out: *mut TcVerdict) -> TcStatus {
    guard(|| write(out, verdict(analysis::th1_exact_matroid(&reference(m, "matroid")?.0)?.verdict)))
}

/// Moment template at level `k`. Fails on matroids with coloops or coparallel pairs.
///
/// # Safety
/// `m` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_template_build(m: *const TcMatroid, k: usize, out: *mut *mut TcTemplate) -> TcStatus {
    guard(|| store(out, TcTemplate(MomentTemplate::build(&reference(m, "matroid")?.0, k)?)))
}

/// # Safety
/// `t` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_template_free(t: *mut TcTemplate) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_template_side(t: *const TcTemplate) -> usize {
    t.as_ref().map_or(0, |t| t.0.side())
}

/// # Safety
/// `t` is null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn tc_template_nvars(t: *const TcTemplate) -> usize {
    t.as_ref().map_or(0, |t| t.0.nvars())
}

/// Variable index of entry `(i, j)`.
///
/// # Safety
/// `t` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_template_var(t: *const TcTemplate, i: usize, j: usize, out: *mut usize) -> TcStatus {
    guard(|| {
        let t = &reference(t, "template")?.0;
        if i >= t.side() || j >= t.side() {
            return Err(Failure::Invalid(format!("entry ({i}, {j}) outside a {0}x{0} template", t.side())));
        }
        write(out, t.var(i, j))
    })
}

/// Degree-one variable of element `e`; fails at level 0.
///
/// # Safety
/// `t` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tc_template_element_var(t: *const TcTemplate, e: usize, out: *mut usize) -> TcStatus {
    guard(|| {
        let t = &reference(t, "template")?.0;
        if e >= t.matroid().m() {
            return Err(Error::InvalidElement { element: e, m: t.matroid().m() }.into());
        }
        let v = t
            .degree1_var(e)
            .ok_or_else(|| Failure::Invalid("level 0 has no degree-one variables".into()))?;
        write(out, v)
    })
}
