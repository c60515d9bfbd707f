/* C interface to the sheafilt filter library. */

#ifndef SHEAFILT_H
#define SHEAFILT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum SheafiltStatus {
  SHEAFILT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SHEAFILT_STATUS_NULL_POINTER = 1,
  /**
   * A coefficient is NaN or infinite.
   */
  SHEAFILT_STATUS_INVALID_COEFFICIENT = 2,
  /**
   * The leading feedback coefficient a0 is zero.
   */
  SHEAFILT_STATUS_DEGENERATE_FILTER = 3,
  /**
   * Both coefficient lists are empty.
   */
  SHEAFILT_STATUS_EMPTY_FILTER = 4,
  /**
   * Buffer or dimension mismatch.
   */
  SHEAFILT_STATUS_SHAPE_MISMATCH = 5,
  /**
   * A signal sample is NaN or infinite (inputs, or outputs that
   * overflowed for an unstable filter).
   */
  SHEAFILT_STATUS_INVALID_SIGNAL = 6,
  /**
   * The filter has order 0 and no state-space model.
   */
  SHEAFILT_STATUS_NO_STATE = 7,
  /**
   * Any other failure.
   */
  SHEAFILT_STATUS_INTERNAL = 8,
} SheafiltStatus;

/**
 * Opaque filter handle: coefficients plus the realized diagram.
 */
typedef struct SheafiltFilter SheafiltFilter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a filter from feedforward taps `b[0..b_len]` and past feedback
 * weights `a[0..a_len]` (a1..aN; the feedback contribution is
 * `-a_j * y[t-j]`). On success writes a handle to `out`; free it with
 * `sheafilt_filter_destroy`.
 *
 * # Safety
 * `b` and `a` must point to `b_len` and `a_len` readable doubles (null is
 * allowed for an empty list), and `out` must be a valid writable pointer.
 */
enum SheafiltStatus sheafilt_filter_create(const double *b,
                                           uintptr_t b_len,
                                           const double *a,
                                           uintptr_t a_len,
                                           struct SheafiltFilter **out);

/**
 * Frees a filter handle. Null is a no-op.
 *
 * # Safety
 * `filter` must be null or a handle from `sheafilt_filter_create` not yet
 * destroyed.
 */
void sheafilt_filter_destroy(struct SheafiltFilter *filter);

/**
 * Filter order N; 0 for a null handle.
 *
 * # Safety
 * `filter` must be null or a live handle.
 */
uintptr_t sheafilt_filter_order(const struct SheafiltFilter *filter);

/**
 * Dimension of the state stalk (N + 1); 0 for a null handle.
 *
 * # Safety
 * `filter` must be null or a live handle.
 */
uintptr_t sheafilt_filter_state_dim(const struct SheafiltFilter *filter);

/**
 * Runs the filter (zero initial state) over `input[0..len]`, writing `len`
 * samples to `output`.
 *
 * # Safety
 * `input` must point to `len` readable doubles and `output` to `len`
 * writable doubles (both may be null only when `len == 0`).
 */
enum SheafiltStatus sheafilt_run(const struct SheafiltFilter *filter,
                                 const double *input,
                                 uintptr_t len,
                                 double *output);

/**
 * Writes `len` samples of the filter's impulse response to `output`.
 *
 * # Safety
 * `output` must point to `len` writable doubles (null allowed for
 * `len == 0`).
 */
enum SheafiltStatus sheafilt_impulse_response(const struct SheafiltFilter *filter,
                                              double *output,
                                              uintptr_t len);

/**
 * Runs the direct form I difference-equation oracle (the classical
 * reference, sharing no code with the sheaf path) over `input[0..len]`.
 *
 * # Safety
 * As for `sheafilt_run`.
 */
enum SheafiltStatus sheafilt_direct_form_oracle(const struct SheafiltFilter *filter,
                                                const double *input,
                                                uintptr_t len,
                                                double *output);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHEAFILT_H */
