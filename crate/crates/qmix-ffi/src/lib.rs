//! C ABI for the qmix density-matrix simulation library.
//!
//! Density matrices cross the boundary as opaque [`QmixDensityMatrix`]
//! pointers created and released by this library. Every fallible call
//! returns a [`QmixStatus`]; on failure, [`qmix_last_error_message`]
//! describes what went wrong. Matrix payloads are exchanged as row-major
//! interleaved `[re, im]` doubles, and scenario runs speak the same JSON
//! spec and report documents as the `qmix` command-line binary.
//!
//! The committed C header lives at `include/qmix.h` and is regenerated by
//! the build script whenever this file changes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qmix::channels::{ontic_collapse, MeasurementBasis};
use qmix::cli::{emit_report, emit_run_all, parse_spec, run, run_all, ExitStatus, Format};
use qmix::linalg::ComplexMatrix;
use qmix::states::{DensityMatrix, PureState};
use qmix::{Complex64, Error};

/// Result of a C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmixStatus {
    /// The call succeeded.
    QmixOk = 0,
    /// A required pointer argument was null.
    QmixNullPointer = 1,
    /// A string argument was not valid UTF-8.
    QmixUtf8 = 2,
    /// A JSON document failed to parse.
    QmixParse = 3,
    /// Arguments were well-formed but violated a domain rule.
    QmixInvalidArgument = 4,
    /// The run completed and at least one check failed.
    QmixChecksFailed = 5,
    /// A conditioning outcome has vanishing probability.
    QmixZeroProbability = 6,
    /// An unexpected internal failure; details in the last error message.
    QmixInternal = 7,
}

/// Opaque handle to a validated density matrix.
pub struct QmixDensityMatrix {
    inner: DensityMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes removed");
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::default();
    });
}

fn fail(status: QmixStatus, message: &str) -> QmixStatus {
    set_last_error(message);
    status
}

fn status_for(error: &Error) -> QmixStatus {
    match error {
        Error::Json(_) => QmixStatus::QmixParse,
        Error::NotUtf8 => QmixStatus::QmixUtf8,
        Error::ZeroProbability { .. } => QmixStatus::QmixZeroProbability,
        Error::Io(_) => QmixStatus::QmixInternal,
        _ => QmixStatus::QmixInvalidArgument,
    }
}

fn fail_with(error: &Error) -> QmixStatus {
    fail(status_for(error), &error.to_string())
}

fn null_pointer() -> QmixStatus {
    fail(QmixStatus::QmixNullPointer, "required pointer was null")
}

/// Runs `body`, converting a panic into `QmixInternal` instead of
/// unwinding across the C boundary.
fn guarded(body: impl FnOnce() -> QmixStatus) -> QmixStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unidentified panic".to_string());
            fail(QmixStatus::QmixInternal, &message)
        }
    }
}

/// Upper bound on register width accepted over the ABI; dimensions grow as
/// 4^qubits, so this caps a density matrix at 16 MiB of doubles.
const MAX_QUBITS: usize = 10;

fn interleaved_to_complex(values: &[f64]) -> Vec<Complex64> {
    values
        .chunks_exact(2)
        .map(|pair| Complex64::new(pair[0], pair[1]))
        .collect()
}

unsafe fn write_handle(out: *mut *mut QmixDensityMatrix, density: DensityMatrix) -> QmixStatus {
    *out = Box::into_raw(Box::new(QmixDensityMatrix { inner: density }));
    QmixStatus::QmixOk
}

/// Message describing the most recent failure on this thread, as a
/// NUL-terminated UTF-8 string owned by the library. The pointer stays
/// valid until the next qmix call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn qmix_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a density matrix from `2 * 4^qubits` row-major interleaved
/// `[re, im]` doubles. The matrix must be Hermitian, unit-trace, and
/// positive semidefinite. On success writes a new handle to `out`.
///
/// # Safety
/// `entries` must point to `entry_count` readable doubles and `out` to a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_new(
    qubits: usize,
    entries: *const f64,
    entry_count: usize,
    out: *mut *mut QmixDensityMatrix,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if entries.is_null() || out.is_null() {
            return null_pointer();
        }
        if qubits == 0 || qubits > MAX_QUBITS {
            return fail(
                QmixStatus::QmixInvalidArgument,
                &format!("qubits must be in 1..={MAX_QUBITS}, got {qubits}"),
            );
        }
        let dim = 1usize << qubits;
        let expected = 2 * dim * dim;
        if entry_count != expected {
            return fail(
                QmixStatus::QmixInvalidArgument,
                &format!("expected {expected} doubles for {qubits} qubits, got {entry_count}"),
            );
        }
        let values = std::slice::from_raw_parts(entries, entry_count);
        let matrix = match ComplexMatrix::new(dim, interleaved_to_complex(values)) {
            Ok(matrix) => matrix,
            Err(error) => return fail_with(&error),
        };
        match DensityMatrix::new(qubits, matrix) {
            Ok(density) => write_handle(out, density),
            Err(error) => fail_with(&error),
        }
    })
}

/// Builds the rank-one density matrix of a pure state given as
/// `2 * 2^qubits` interleaved `[re, im]` amplitude doubles.
///
/// # Safety
/// `amplitudes` must point to `amplitude_count` readable doubles and `out`
/// to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_from_pure(
    qubits: usize,
    amplitudes: *const f64,
    amplitude_count: usize,
    out: *mut *mut QmixDensityMatrix,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if amplitudes.is_null() || out.is_null() {
            return null_pointer();
        }
        if qubits == 0 || qubits > MAX_QUBITS {
            return fail(
                QmixStatus::QmixInvalidArgument,
                &format!("qubits must be in 1..={MAX_QUBITS}, got {qubits}"),
            );
        }
        let expected = 2 * (1usize << qubits);
        if amplitude_count != expected {
            return fail(
                QmixStatus::QmixInvalidArgument,
                &format!("expected {expected} doubles for {qubits} qubits, got {amplitude_count}"),
            );
        }
        let values = std::slice::from_raw_parts(amplitudes, amplitude_count);
        let state = match PureState::from_amplitudes(qubits, interleaved_to_complex(values)) {
            Ok(state) => state,
            Err(error) => return fail_with(&error),
        };
        match state.to_density() {
            Ok(density) => write_handle(out, density),
            Err(error) => fail_with(&error),
        }
    })
}

/// Deep-copies a density matrix into a new handle.
///
/// # Safety
/// `handle` must be a live pointer from this library and `out` a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_clone(
    handle: *const QmixDensityMatrix,
    out: *mut *mut QmixDensityMatrix,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || out.is_null() {
            return null_pointer();
        }
        write_handle(out, (*handle).inner.clone())
    })
}

/// Releases a handle returned by this library. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a live pointer from this library, and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_free(handle: *mut QmixDensityMatrix) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes the register width of a density matrix to `out`.
///
/// # Safety
/// `handle` must be a live pointer from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_qubits(
    handle: *const QmixDensityMatrix,
    out: *mut usize,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || out.is_null() {
            return null_pointer();
        }
        *out = (*handle).inner.qubits();
        QmixStatus::QmixOk
    })
}

/// Copies the matrix out as `2 * 4^qubits` row-major interleaved `[re, im]`
/// doubles. `buffer_count` must match that length exactly.
///
/// # Safety
/// `handle` must be a live pointer from this library and `buffer` must
/// point to `buffer_count` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_entries(
    handle: *const QmixDensityMatrix,
    buffer: *mut f64,
    buffer_count: usize,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || buffer.is_null() {
            return null_pointer();
        }
        let matrix = (*handle).inner.matrix();
        let expected = 2 * matrix.dim() * matrix.dim();
        if buffer_count != expected {
            return fail(
                QmixStatus::QmixInvalidArgument,
                &format!("expected a buffer of {expected} doubles, got {buffer_count}"),
            );
        }
        let slots = std::slice::from_raw_parts_mut(buffer, buffer_count);
        for (slot_pair, entry) in slots.chunks_exact_mut(2).zip(matrix.entries()) {
            slot_pair[0] = entry.re;
            slot_pair[1] = entry.im;
        }
        QmixStatus::QmixOk
    })
}

/// Writes tr(ρ²) to `out`.
///
/// # Safety
/// `handle` must be a live pointer from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_purity(
    handle: *const QmixDensityMatrix,
    out: *mut f64,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || out.is_null() {
            return null_pointer();
        }
        *out = (*handle).inner.purity();
        QmixStatus::QmixOk
    })
}

/// Writes the trace distance ½‖ρ − σ‖₁ between two equal-width density
/// matrices to `out`.
///
/// # Safety
/// `rho` and `sigma` must be live pointers from this library and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qmix_trace_distance(
    rho: *const QmixDensityMatrix,
    sigma: *const QmixDensityMatrix,
    out: *mut f64,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if rho.is_null() || sigma.is_null() || out.is_null() {
            return null_pointer();
        }
        match qmix::analysis::trace_distance(&(*rho).inner, &(*sigma).inner) {
            Ok(distance) => {
                *out = distance;
                QmixStatus::QmixOk
            }
            Err(error) => fail_with(&error),
        }
    })
}

/// Traces out the listed qubits (0 = most significant) and writes the
/// reduced density matrix to `out`. At least one qubit must remain.
///
/// # Safety
/// `handle` must be a live pointer from this library, `traced` must point
/// to `traced_count` readable indices, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qmix_density_trace_out(
    handle: *const QmixDensityMatrix,
    traced: *const usize,
    traced_count: usize,
    out: *mut *mut QmixDensityMatrix,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || traced.is_null() || out.is_null() {
            return null_pointer();
        }
        let indices = std::slice::from_raw_parts(traced, traced_count);
        match (*handle).inner.trace_out_qubits(indices) {
            Ok(reduced) => write_handle(out, reduced),
            Err(error) => fail_with(&error),
        }
    })
}

/// Applies the nonselective computational-basis measurement update
/// ρ → Σ_m P_m ρ P_m on the listed target qubits and writes the collapsed
/// state to `out`.
///
/// # Safety
/// `handle` must be a live pointer from this library, `targets` must point
/// to `target_count` readable indices, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qmix_collapse_computational(
    handle: *const QmixDensityMatrix,
    targets: *const usize,
    target_count: usize,
    out: *mut *mut QmixDensityMatrix,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if handle.is_null() || targets.is_null() || out.is_null() {
            return null_pointer();
        }
        if target_count == 0 {
            return fail(
                QmixStatus::QmixInvalidArgument,
                "at least one target qubit is required",
            );
        }
        let indices = std::slice::from_raw_parts(targets, target_count);
        let basis = MeasurementBasis::computational(target_count);
        match ontic_collapse(&(*handle).inner, &basis, indices) {
            Ok(collapsed) => write_handle(out, collapsed),
            Err(error) => fail_with(&error),
        }
    })
}

fn json_to_c_string(bytes: Vec<u8>, out_json: *mut *mut c_char) -> QmixStatus {
    match CString::new(bytes) {
        Ok(text) => {
            unsafe { *out_json = text.into_raw() };
            QmixStatus::QmixOk
        }
        Err(_) => fail(
            QmixStatus::QmixInternal,
            "emitted JSON contained a NUL byte",
        ),
    }
}

/// Parses a JSON scenario spec, runs it, and writes the report document to
/// `out_json` as a NUL-terminated string (release it with
/// [`qmix_string_free`]). Returns `QmixChecksFailed` — with the report
/// still written — when the run completes but a check fails.
///
/// # Safety
/// `spec_json` must be a NUL-terminated readable string and `out_json` a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qmix_run_spec_json(
    spec_json: *const c_char,
    out_json: *mut *mut c_char,
) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if spec_json.is_null() || out_json.is_null() {
            return null_pointer();
        }
        let text = match CStr::from_ptr(spec_json).to_str() {
            Ok(text) => text,
            Err(_) => return fail(QmixStatus::QmixUtf8, "spec was not valid UTF-8"),
        };
        let spec = match parse_spec(text) {
            Ok(spec) => spec,
            Err(error) => return fail_with(&error),
        };
        let summary = match run(&spec) {
            Ok(summary) => summary,
            Err(error) => return fail_with(&error),
        };
        let bytes = match emit_report(&summary, Format::Json) {
            Ok(bytes) => bytes,
            Err(error) => return fail_with(&error),
        };
        let status = json_to_c_string(bytes, out_json);
        if status == QmixStatus::QmixOk && summary.exit_status == ExitStatus::Fail {
            return fail(
                QmixStatus::QmixChecksFailed,
                "run completed with failing checks; see the report",
            );
        }
        status
    })
}

/// Runs every scenario with canonical parameters and writes the combined
/// JSON report array to `out_json` (release it with [`qmix_string_free`]).
/// Returns `QmixChecksFailed` — with the report still written — if any
/// scenario fails a check.
///
/// # Safety
/// `out_json` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qmix_run_all_json(out_json: *mut *mut c_char) -> QmixStatus {
    guarded(|| {
        clear_last_error();
        if out_json.is_null() {
            return null_pointer();
        }
        let summaries = match run_all(None, None, None) {
            Ok(summaries) => summaries,
            Err(error) => return fail_with(&error),
        };
        let bytes = match emit_run_all(&summaries, Format::Json) {
            Ok(bytes) => bytes,
            Err(error) => return fail_with(&error),
        };
        let status = json_to_c_string(bytes, out_json);
        let all_passed = summaries
            .iter()
            .all(|summary| summary.exit_status == ExitStatus::Pass);
        if status == QmixStatus::QmixOk && !all_passed {
            return fail(
                QmixStatus::QmixChecksFailed,
                "at least one scenario failed a check; see the report",
            );
        }
        status
    })
}

/// Releases a string returned by a run function. Null is a no-op.
///
/// # Safety
/// `text` must be null or a pointer from a qmix run function, and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qmix_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
