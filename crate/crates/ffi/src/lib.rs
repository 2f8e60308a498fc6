//! C ABI over `mz-core`.
//!
//! Every fallible function returns an [`MzStatus`] and writes its result
//! through an out-pointer. On failure [`mz_last_error`] describes the error
//! for the calling thread. Handles are freed with their `_free` function;
//! strings returned by the library are freed with [`mz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use mz_core::charpoly::Engine;
use mz_core::error::Error;
use mz_core::gfq::FieldSpec;
use mz_core::io;
use mz_core::matroid::{full_mask, Matroid, RankFn};
use mz_core::poly::{sturm_positive_beyond, IntPolynomial};
use mz_core::treedecomp::{self, TreeDecomposition};

/// Opaque matroid handle.
pub struct MzMatroid(Matroid);

/// Opaque integer polynomial handle.
pub struct MzPoly(IntPolynomial);

/// Opaque tree-decomposition handle.
pub struct MzDecomposition(TreeDecomposition);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    TooLarge = 5,
    /// The operation needs a linear, simple, loopless or non-zero-rank input.
    Unsupported = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzEngine {
    Mobius = 0,
    Boolean = 1,
    DeleteContract = 2,
    Cocircuit = 3,
}

impl From<MzEngine> for Engine {
    fn from(e: MzEngine) -> Self {
        match e {
            MzEngine::Mobius => Engine::Mobius,
            MzEngine::Boolean => Engine::Boolean,
            MzEngine::DeleteContract => Engine::DeleteContract,
            MzEngine::Cocircuit => Engine::Cocircuit,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MzStatus {
    match e {
        Error::Parse(_) => MzStatus::Parse,
        Error::Io(_) => MzStatus::Io,
        Error::TooLarge(_) => MzStatus::TooLarge,
        Error::NotLinear | Error::NotSimple | Error::HasLoop | Error::RankZero => {
            MzStatus::Unsupported
        }
        _ => MzStatus::InvalidArgument,
    }
}

struct Failure(MzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MzStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(MzStatus::InvalidArgument, msg.into())
}

/// Runs `f`, recording any error or panic for [`mz_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MzStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            MzStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a Path, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| invalid("path is not UTF-8"))?;
    Ok(Path::new(s))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn mz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Matroid of the columns of a `rows × cols` matrix over GF(q), given row-major
/// as field indices.
///
/// # Safety
/// `entries` must point to `rows * cols` bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_from_matrix(
    q: u32,
    rows: usize,
    cols: usize,
    entries: *const u8,
    out: *mut *mut MzMatroid,
) -> MzStatus {
    guard(|| {
        if entries.is_null() && rows * cols > 0 {
            return Err(null("entries"));
        }
        let cells = if rows * cols == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(entries, rows * cols)
        };
        if let Some(&x) = cells.iter().find(|&&x| x as u32 >= q) {
            return Err(invalid(format!("entry {x} outside GF({q})")));
        }
        let field = Arc::new(FieldSpec::gf(q)?);
        let columns = (0..cols)
            .map(|j| (0..rows).map(|i| cells[i * cols + j]).collect())
            .collect();
        let m = Matroid::from_columns(field, rows, columns)?;
        put(out, boxed(MzMatroid(m)))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_uniform(
    rank: usize,
    n: usize,
    out: *mut *mut MzMatroid,
) -> MzStatus {
    guard(|| put(out, boxed(MzMatroid(Matroid::uniform(rank, n)?))))
}

/// Reads a matrix or graph file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_from_file(
    path: *const c_char,
    out: *mut *mut MzMatroid,
) -> MzStatus {
    guard(|| {
        put(
            out,
            boxed(MzMatroid(io::read_matroid_file(path_arg(path)?)?)),
        )
    })
}

/// # Safety
/// `m` must be null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_free(m: *mut MzMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_size(m: *const MzMatroid) -> usize {
    m.as_ref().map_or(0, |m| m.0.size())
}

/// Rank of the elements in `mask` (bit `e` for element `e`).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_matroid_rank(
    m: *const MzMatroid,
    mask: u32,
    out: *mut usize,
) -> MzStatus {
    guard(|| {
        let m = &get(m, "matroid")?.0;
        if mask & !full_mask(m.size()) != 0 {
            return Err(invalid(format!(
                "mask {mask:#x} has bits beyond {} elements",
                m.size()
            )));
        }
        put(out, m.rank(mask))
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_has_line_minor(
    m: *const MzMatroid,
    l: usize,
    out: *mut bool,
) -> MzStatus {
    guard(|| put(out, get(m, "matroid")?.0.has_line_minor(l)?))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_charpoly(
    m: *const MzMatroid,
    engine: MzEngine,
    out: *mut *mut MzPoly,
) -> MzStatus {
    guard(|| {
        let p = Engine::from(engine).compute(&get(m, "matroid")?.0)?;
        put(out, boxed(MzPoly(p)))
    })
}

/// # Safety
/// `p` must be null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_free(p: *mut MzPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or -1 for the zero polynomial or a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_degree(p: *const MzPoly) -> isize {
    p.as_ref()
        .and_then(|p| p.0.degree())
        .map_or(-1, |d| d as isize)
}

/// JSON array of decimal coefficient strings, constant term first. Free with
/// [`mz_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_to_json(p: *const MzPoly, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let json = get(p, "polynomial")?.0.to_json();
        put(
            out,
            CString::new(json)
                .map_err(|_| invalid("NUL in JSON"))?
                .into_raw(),
        )
    })
}

/// Whether `p(λ) > 0` for every `λ > num/den`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_positive_beyond(
    p: *const MzPoly,
    num: i64,
    den: i64,
    out: *mut bool,
) -> MzStatus {
    guard(|| {
        if den == 0 {
            return Err(invalid("zero denominator"));
        }
        let bound = BigRational::new(BigInt::from(num), BigInt::from(den));
        put(out, sturm_positive_beyond(&get(p, "polynomial")?.0, &bound))
    })
}

/// Reads a decomposition file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_decomposition_from_file(
    path: *const c_char,
    out: *mut *mut MzDecomposition,
) -> MzStatus {
    guard(|| {
        put(
            out,
            boxed(MzDecomposition(io::read_decomposition_file(path_arg(
                path,
            )?)?)),
        )
    })
}

/// Best decomposition among the built-in heuristics.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_decomposition_heuristic(
    m: *const MzMatroid,
    out: *mut *mut MzDecomposition,
) -> MzStatus {
    guard(|| {
        let (dec, _) = treedecomp::best_heuristic(&get(m, "matroid")?.0);
        put(out, boxed(MzDecomposition(dec)))
    })
}

/// An optimal decomposition by exhaustive search (at most 7 elements).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_decomposition_exact(
    m: *const MzMatroid,
    out: *mut *mut MzDecomposition,
) -> MzStatus {
    guard(|| {
        let ex = treedecomp::exact_treewidth_small(&get(m, "matroid")?.0)?;
        put(out, boxed(MzDecomposition(ex.witness)))
    })
}

/// # Safety
/// `d` must be null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_decomposition_free(d: *mut MzDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of tree vertices, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_decomposition_vertex_count(d: *const MzDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.0.tree().vertex_count())
}

/// Width of `d` as a decomposition of `m`.
///
/// # Safety
/// `m` and `d` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_width(
    m: *const MzMatroid,
    d: *const MzDecomposition,
    out: *mut usize,
) -> MzStatus {
    guard(|| {
        let rep = treedecomp::width(&get(m, "matroid")?.0, &get(d, "decomposition")?.0)?;
        put(out, rep.width)
    })
}
