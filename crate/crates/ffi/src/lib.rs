//! C ABI over `twalg`. Every function returns a [`TwStatus`]; results come
//! back through out-pointers. On failure the message is available from
//! [`tw_last_error_message`] on the same thread.
//!
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use twalg::closure::terwilliger_dim;
use twalg::decomposition::{decompose, dim_formula, DecompositionReport, Weight};
use twalg::digraph::shell_size;
use twalg::lie::{build_operators, check_all_relations, OperatorSet};
use twalg::sym_tensor::wedderburn_profile;
use twalg::{Error, Limits};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Shape = 3,
    Precondition = 4,
    Resource = 5,
    Integrity = 6,
    Parse = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// The sl3 operators for one `d`.
pub struct TwOperators(OperatorSet);

/// A decomposition of the standard module.
pub struct TwDecomposition(DecompositionReport);

/// One isotypic block: highest weight vector type, weight, dimension and
/// multiplicity.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TwBlock {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub m1: i64,
    pub m2: i64,
    pub dim: u64,
    pub mult: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TwStatus {
    match e {
        Error::Shape { .. } => TwStatus::Shape,
        Error::Domain(_) => TwStatus::Domain,
        Error::Precondition(_) => TwStatus::Precondition,
        Error::Resource { .. } => TwStatus::Resource,
        Error::Integrity(_) => TwStatus::Integrity,
        Error::Parse(_) => TwStatus::Parse,
    }
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), (TwStatus, String)>) -> TwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TwStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TwStatus::Panic
        }
    }
}

fn lift<T>(r: twalg::Result<T>) -> Result<T, (TwStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TwStatus, String) {
    (TwStatus::NullPointer, format!("{what} is null"))
}

fn limits() -> Result<Limits, (TwStatus, String)> {
    lift(Limits::from_env())
}

/// Writes `value` through `out`, failing on a null pointer.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (TwStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `tw_*` call on this thread.
#[no_mangle]
pub extern "C" fn tw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the operators for `d`. Honors `TWALG_CAP`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tw_operators_new(d: usize, out: *mut *mut TwOperators) -> TwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ops = lift(build_operators(d, &limits()?))?;
        out.write(Box::into_raw(Box::new(TwOperators(ops))));
        Ok(())
    })
}

/// Releases operators; null is ignored.
///
/// # Safety
/// `ops` must be null or a pointer from [`tw_operators_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tw_operators_free(ops: *mut TwOperators) {
    if !ops.is_null() {
        drop(Box::from_raw(ops));
    }
}

/// Number of vertices, `3^d`.
///
/// # Safety
/// `ops` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_operators_size(ops: *const TwOperators, out: *mut usize) -> TwStatus {
    guard(|| {
        let ops = ops.as_ref().ok_or_else(|| null("ops"))?;
        write_out(out, ops.0.n())
    })
}

/// Runs the operator identity suite; reports how many identities were
/// checked and how many hold exactly.
///
/// # Safety
/// `ops` must be a live handle; both outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tw_relations_check(ops: *const TwOperators, out_total: *mut usize, out_passed: *mut usize) -> TwStatus {
    guard(|| {
        let ops = ops.as_ref().ok_or_else(|| null("ops"))?;
        if out_total.is_null() || out_passed.is_null() {
            return Err(null("output pointer"));
        }
        let reports = check_all_relations(&ops.0);
        write_out(out_total, reports.len())?;
        write_out(out_passed, reports.iter().filter(|r| r.pass).count())
    })
}

/// Decomposes the standard module.
///
/// # Safety
/// `ops` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tw_decompose(ops: *const TwOperators, out: *mut *mut TwDecomposition) -> TwStatus {
    guard(|| {
        let ops = ops.as_ref().ok_or_else(|| null("ops"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let dec = lift(decompose(&ops.0))?;
        out.write(Box::into_raw(Box::new(TwDecomposition(dec))));
        Ok(())
    })
}

/// Releases a decomposition; null is ignored.
///
/// # Safety
/// `dec` must be null or a pointer from [`tw_decompose`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tw_decomposition_free(dec: *mut TwDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// # Safety
/// `dec` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_decomposition_block_count(dec: *const TwDecomposition, out: *mut usize) -> TwStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("dec"))?;
        write_out(out, dec.0.blocks.len())
    })
}

/// Block `index`, in ascending `(t, m2)` order.
///
/// # Safety
/// `dec` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_decomposition_block(dec: *const TwDecomposition, index: usize, out: *mut TwBlock) -> TwStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("dec"))?;
        let b = dec.0.blocks.get(index).ok_or_else(|| {
            (
                TwStatus::OutOfRange,
                format!("block {index} of {}", dec.0.blocks.len()),
            )
        })?;
        write_out(
            out,
            TwBlock {
                r: b.hwv_type.r,
                s: b.hwv_type.s,
                t: b.hwv_type.t,
                m1: b.weight.m1,
                m2: b.weight.m2,
                dim: b.dim,
                mult: b.multiplicity,
            },
        )
    })
}

/// `sum dim * mult`, always `3^d`.
///
/// # Safety
/// `dec` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_decomposition_total(dec: *const TwDecomposition, out: *mut u64) -> TwStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("dec"))?;
        write_out(out, dec.0.total)
    })
}

/// Algebra dimension by closure. Honors `TWALG_CAP`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_terwilliger_dim(d: usize, out: *mut usize) -> TwStatus {
    guard(|| {
        let dim = lift(terwilliger_dim(d, &limits()?))?;
        write_out(out, dim)
    })
}

/// Sum of squared Wedderburn block sizes.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_wedderburn_total(d: usize, out: *mut u64) -> TwStatus {
    guard(|| {
        let p = lift(wedderburn_profile(d))?;
        write_out(out, p.total_dim)
    })
}

/// Number of vertices of type `(d-s-t, s, t)`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_shell_size(d: usize, s: usize, t: usize, out: *mut u64) -> TwStatus {
    guard(|| {
        let n = lift(shell_size(d, s, t))?;
        write_out(out, n)
    })
}

/// Dimension of the irreducible module of highest weight `(m1, m2)`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tw_dim_formula(m1: i64, m2: i64, out: *mut u64) -> TwStatus {
    guard(|| {
        let n = lift(dim_formula(Weight { m1, m2 }))?;
        write_out(out, n)
    })
}
