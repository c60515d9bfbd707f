//! C ABI over the sheafilt library: opaque filter handles, caller-owned
//! buffers, status codes. See the generated `include/sheafilt.h`.

use sheafilt::engine;
use sheafilt::{Error, FilterCoefficients, SheafDiagram, Signal};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheafiltStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A coefficient is NaN or infinite.
    InvalidCoefficient = 2,
    /// The leading feedback coefficient a0 is zero.
    DegenerateFilter = 3,
    /// Both coefficient lists are empty.
    EmptyFilter = 4,
    /// Buffer or dimension mismatch.
    ShapeMismatch = 5,
    /// A signal sample is NaN or infinite (inputs, or outputs that
    /// overflowed for an unstable filter).
    InvalidSignal = 6,
    /// The filter has order 0 and no state-space model.
    NoState = 7,
    /// Any other failure.
    Internal = 8,
}

impl From<&Error> for SheafiltStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::InvalidCoefficient { .. } => SheafiltStatus::InvalidCoefficient,
            Error::DegenerateFilter => SheafiltStatus::DegenerateFilter,
            Error::EmptyFilter => SheafiltStatus::EmptyFilter,
            Error::Shape(_) => SheafiltStatus::ShapeMismatch,
            Error::InvalidSignal(_) => SheafiltStatus::InvalidSignal,
            Error::NoState => SheafiltStatus::NoState,
            _ => SheafiltStatus::Internal,
        }
    }
}

/// Opaque filter handle: coefficients plus the realized diagram.
pub struct SheafiltFilter {
    coeffs: FilterCoefficients,
    diagram: SheafDiagram,
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Creates a filter from feedforward taps `b[0..b_len]` and past feedback
/// weights `a[0..a_len]` (a1..aN; the feedback contribution is
/// `-a_j * y[t-j]`). On success writes a handle to `out`; free it with
/// `sheafilt_filter_destroy`.
///
/// # Safety
/// `b` and `a` must point to `b_len` and `a_len` readable doubles (null is
/// allowed for an empty list), and `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sheafilt_filter_create(
    b: *const f64,
    b_len: usize,
    a: *const f64,
    a_len: usize,
    out: *mut *mut SheafiltFilter,
) -> SheafiltStatus {
    if out.is_null() {
        return SheafiltStatus::NullPointer;
    }
    let (Some(b), Some(a)) = (slice_arg(b, b_len), slice_arg(a, a_len)) else {
        return SheafiltStatus::NullPointer;
    };
    match FilterCoefficients::new(b, a) {
        Ok(coeffs) => {
            let diagram = coeffs.polezero_maps();
            *out = Box::into_raw(Box::new(SheafiltFilter { coeffs, diagram }));
            SheafiltStatus::Ok
        }
        Err(e) => SheafiltStatus::from(&e),
    }
}

/// Frees a filter handle. Null is a no-op.
///
/// # Safety
/// `filter` must be null or a handle from `sheafilt_filter_create` not yet
/// destroyed.
#[no_mangle]
pub unsafe extern "C" fn sheafilt_filter_destroy(filter: *mut SheafiltFilter) {
    if !filter.is_null() {
        drop(Box::from_raw(filter));
    }
}

/// Filter order N; 0 for a null handle.
///
/// # Safety
/// `filter` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sheafilt_filter_order(filter: *const SheafiltFilter) -> usize {
    filter.as_ref().map_or(0, |f| f.coeffs.order())
}

/// Dimension of the state stalk (N + 1); 0 for a null handle.
///
/// # Safety
/// `filter` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sheafilt_filter_state_dim(filter: *const SheafiltFilter) -> usize {
    filter.as_ref().map_or(0, |f| f.coeffs.state_dim())
}

unsafe fn run_into(
    filter: *const SheafiltFilter,
    input: Signal,
    output: *mut f64,
    len: usize,
) -> SheafiltStatus {
    let Some(f) = filter.as_ref() else {
        return SheafiltStatus::NullPointer;
    };
    if len > 0 && output.is_null() {
        return SheafiltStatus::NullPointer;
    }
    match engine::run_filter(&f.diagram, &input, None) {
        Ok(result) => {
            let samples = result.output.samples();
            std::ptr::copy_nonoverlapping(samples.as_ptr(), output, samples.len());
            SheafiltStatus::Ok
        }
        Err(e) => SheafiltStatus::from(&e),
    }
}

/// Runs the filter (zero initial state) over `input[0..len]`, writing `len`
/// samples to `output`.
///
/// # Safety
/// `input` must point to `len` readable doubles and `output` to `len`
/// writable doubles (both may be null only when `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn sheafilt_run(
    filter: *const SheafiltFilter,
    input: *const f64,
    len: usize,
    output: *mut f64,
) -> SheafiltStatus {
    let Some(input) = slice_arg(input, len) else {
        return SheafiltStatus::NullPointer;
    };
    let signal = match Signal::new(input.to_vec()) {
        Ok(s) => s,
        Err(e) => return SheafiltStatus::from(&e),
    };
    run_into(filter, signal, output, len)
}

/// Writes `len` samples of the filter's impulse response to `output`.
///
/// # Safety
/// `output` must point to `len` writable doubles (null allowed for
/// `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn sheafilt_impulse_response(
    filter: *const SheafiltFilter,
    output: *mut f64,
    len: usize,
) -> SheafiltStatus {
    run_into(filter, Signal::impulse(len), output, len)
}

/// Runs the direct form I difference-equation oracle (the classical
/// reference, sharing no code with the sheaf path) over `input[0..len]`.
///
/// # Safety
/// As for `sheafilt_run`.
#[no_mangle]
pub unsafe extern "C" fn sheafilt_direct_form_oracle(
    filter: *const SheafiltFilter,
    input: *const f64,
    len: usize,
    output: *mut f64,
) -> SheafiltStatus {
    let Some(f) = filter.as_ref() else {
        return SheafiltStatus::NullPointer;
    };
    let Some(input) = slice_arg(input, len) else {
        return SheafiltStatus::NullPointer;
    };
    if len > 0 && output.is_null() {
        return SheafiltStatus::NullPointer;
    }
    let signal = match Signal::new(input.to_vec()) {
        Ok(s) => s,
        Err(e) => return SheafiltStatus::from(&e),
    };
    match engine::direct_form_oracle(&f.coeffs, &signal) {
        Ok(out_signal) => {
            let samples = out_signal.samples();
            std::ptr::copy_nonoverlapping(samples.as_ptr(), output, samples.len());
            SheafiltStatus::Ok
        }
        Err(e) => SheafiltStatus::from(&e),
    }
}
