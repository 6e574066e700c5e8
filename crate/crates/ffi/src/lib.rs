//! C ABI over `latnorm`.
//!
//! Every function returns an [`LnStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`ln_last_error`] and [`ln_last_error_message`]. Handles are opaque and
//! must be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latnorm::channel::{eve_probability, pep_curve};
use latnorm::enumeration::{count_table, BoxSpec, CountTable, DEFAULT_BUDGET};
use latnorm::estimator::{attach_estimates, error_profile};
use latnorm::fixture::{FieldContext, FieldDocument};
use latnorm::zeta::dirichlet_coeffs;
use latnorm::{AlgebraicInt, Error, Precision};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Rejected input: bad polynomial, units, parameters or document.
    Invalid = 3,
    /// Enumeration budget or zeta cutoff exhausted.
    Limit = 4,
    Io = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A field with its unit system.
pub struct LnField(FieldContext);

/// Exact counts with the estimate columns attached.
pub struct LnCountTable(CountTable);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LnCountRow {
    pub k: u64,
    pub a: u32,
    pub b: u64,
    pub n_raw: f64,
    pub n: u64,
    pub f: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LnErrorProfile {
    pub rows: u64,
    pub max_error: u64,
    pub zero_fraction: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LnErrorSummary {
    pub status: LnStatus,
    /// Bytes in the message, without the terminating NUL.
    pub message_len: usize,
}

struct LastError {
    status: LnStatus,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure(LnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            _ if e.is_limit() => LnStatus::Limit,
            Error::Io(_) => LnStatus::Io,
            _ => LnStatus::Invalid,
        };
        Failure(status, format!("{}: {e}", e.name()))
    }
}

fn fail(status: LnStatus, msg: &str) -> Failure {
    Failure(status, msg.to_string())
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> LnStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure(LnStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LnStatus::Ok
        }
        Err(Failure(status, msg)) => {
            let message = CString::new(msg.replace('\0', " ")).expect("NULs removed");
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { status, message }));
            status
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(LnStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(LnStatus::NullPointer, "null out pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(fail(LnStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(LnStatus::InvalidUtf8, "string is not UTF-8"))
}

/// Parses a field document from a JSON string.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_from_json(json: *const c_char, out: *mut *mut LnField) -> LnStatus {
    guard(|| {
        let doc = FieldDocument::from_json(text(json)?)?;
        let ctx = FieldContext::from_document(&doc, Precision::default())?;
        write(out, Box::into_raw(Box::new(LnField(ctx))))
    })
}

/// Loads a field document from a file.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_load(path: *const c_char, out: *mut *mut LnField) -> LnStatus {
    guard(|| {
        let ctx = FieldContext::load(text(path)?, Precision::default())?;
        write(out, Box::into_raw(Box::new(LnField(ctx))))
    })
}

/// # Safety
/// `field` must come from `ln_field_load` or `ln_field_from_json`, or be null.
#[no_mangle]
pub unsafe extern "C" fn ln_field_free(field: *mut LnField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_degree(field: *const LnField, out: *mut usize) -> LnStatus {
    guard(|| write(out, deref(field)?.0.degree()))
}

/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_regulator(field: *const LnField, out: *mut f64) -> LnStatus {
    guard(|| write(out, deref(field)?.0.units.regulator()))
}

/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_log_volume(field: *const LnField, out: *mut f64) -> LnStatus {
    guard(|| write(out, deref(field)?.0.units.log_volume()))
}

/// Writes the `n` real embeddings of `θ` in increasing order.
///
/// # Safety
/// `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn ln_field_embeddings(field: *const LnField, buf: *mut f64, len: usize) -> LnStatus {
    guard(|| {
        let roots = deref(field)?.0.field.embeddings_f64();
        if buf.is_null() {
            return Err(fail(LnStatus::NullPointer, "null buffer"));
        }
        if len < roots.len() {
            return Err(fail(LnStatus::OutOfRange, "buffer shorter than the degree"));
        }
        ptr::copy_nonoverlapping(roots.as_ptr(), buf, roots.len());
        Ok(())
    })
}

/// Exact norm of `Σ coords[i] θ^i`; `len` must equal the degree.
///
/// # Safety
/// `coords` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_field_norm(
    field: *const LnField,
    coords: *const i64,
    len: usize,
    out: *mut i64,
) -> LnStatus {
    guard(|| {
        let ctx = &deref(field)?.0;
        if coords.is_null() {
            return Err(fail(LnStatus::NullPointer, "null coordinates"));
        }
        if len != ctx.degree() {
            return Err(fail(LnStatus::Invalid, "coordinate count differs from the degree"));
        }
        let x = AlgebraicInt::from_i64s(std::slice::from_raw_parts(coords, len));
        let norm = ctx.field.norm(&x).to_i64().ok_or_else(|| fail(LnStatus::OutOfRange, "norm exceeds 64 bits"))?;
        write(out, norm)
    })
}

/// Enumerates the box of half-width `radius` and builds the count table with
/// estimates. Zero for `max_norm`, `zeta_cutoff` or `budget` selects the
/// default: no norm filter, a cutoff just covering the table, 10^8 nodes.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_count_table_new(
    field: *const LnField,
    radius: f64,
    max_norm: u64,
    zeta_cutoff: usize,
    budget: u64,
    out: *mut *mut LnCountTable,
) -> LnStatus {
    guard(|| {
        let ctx = &deref(field)?.0;
        let spec = BoxSpec::new(radius)?;
        let max_norm = (max_norm != 0).then_some(max_norm);
        let limit = spec.norm_limit(ctx.degree()).min(max_norm.unwrap_or(u64::MAX));
        let cutoff = if zeta_cutoff != 0 { zeta_cutoff } else { limit as usize };
        let zeta = dirichlet_coeffs(&ctx.field, cutoff)?;
        let budget = if budget != 0 { budget } else { DEFAULT_BUDGET };
        let mut table = count_table(&ctx.field, &spec, &zeta, max_norm, budget)?;
        attach_estimates(&mut table, &ctx.units);
        write(out, Box::into_raw(Box::new(LnCountTable(table))))
    })
}

/// # Safety
/// `table` must come from `ln_count_table_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn ln_count_table_free(table: *mut LnCountTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_count_table_len(table: *const LnCountTable, out: *mut usize) -> LnStatus {
    guard(|| write(out, deref(table)?.0.rows.len()))
}

/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_count_table_row(
    table: *const LnCountTable,
    index: usize,
    out: *mut LnCountRow,
) -> LnStatus {
    guard(|| {
        let r = deref(table)?.0.rows.get(index).ok_or_else(|| fail(LnStatus::OutOfRange, "row index past the end"))?;
        write(
            out,
            LnCountRow {
                k: r.k,
                a: r.a,
                b: r.b.unwrap_or(0),
                n_raw: r.n_raw.unwrap_or(0.0),
                n: r.n.unwrap_or(0),
                f: r.f.unwrap_or(0),
            },
        )
    })
}

/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_error_profile(table: *const LnCountTable, out: *mut LnErrorProfile) -> LnStatus {
    guard(|| {
        let p = error_profile(&deref(table)?.0)?;
        write(out, LnErrorProfile { rows: p.rows, max_error: p.max_error, zero_fraction: p.zero_fraction })
    })
}

/// Fraction of rows with `f_k ≤ f`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_error_fraction_at_most(table: *const LnCountTable, f: u64, out: *mut f64) -> LnStatus {
    guard(|| write(out, error_profile(&deref(table)?.0)?.fraction_at_most(f)))
}

/// `Σ n_k k^{-2} / Σ b_k k^{-2}`, the SNR-independent PEP ratio.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_pep_ratio(table: *const LnCountTable, out: *mut f64) -> LnStatus {
    guard(|| write(out, pep_curve(&deref(table)?.0, 0.0, 0.0, 1)?.ratio))
}

/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_eve_probability(
    table: *const LnCountTable,
    gamma_e: f64,
    vol_lambda_b: f64,
    out: *mut f64,
) -> LnStatus {
    guard(|| write(out, eve_probability(&deref(table)?.0, gamma_e, vol_lambda_b)?))
}

/// Status of the last failed call on this thread, `Ok` if the last call
/// succeeded.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ln_last_error(out: *mut LnErrorSummary) -> LnStatus {
    if out.is_null() {
        return LnStatus::NullPointer;
    }
    let summary = LAST_ERROR.with(|e| match &*e.borrow() {
        Some(err) => LnErrorSummary { status: err.status, message_len: err.message.as_bytes().len() },
        None => LnErrorSummary { status: LnStatus::Ok, message_len: 0 },
    });
    out.write(summary);
    LnStatus::Ok
}

/// Copies the last error message, NUL-terminated and truncated to `len`
/// bytes. Returns the full message length.
///
/// # Safety
/// `buf` must hold `len` bytes, or be null with `len` zero.
#[no_mangle]
pub unsafe extern "C" fn ln_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let borrowed = e.borrow();
        let bytes = borrowed.as_ref().map_or(&b""[..], |err| err.message.as_bytes());
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
