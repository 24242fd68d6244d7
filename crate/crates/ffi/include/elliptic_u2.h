#ifndef ELLIPTIC_U2_H
#define ELLIPTIC_U2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EllU2Status {
  ELL_U2_STATUS_OK = 0,
  ELL_U2_STATUS_NULL_POINTER = 1,
  ELL_U2_STATUS_INVALID_MODULUS = 2,
  ELL_U2_STATUS_ZERO_ARGUMENT = 3,
  ELL_U2_STATUS_POLE_PROXIMITY = 4,
  ELL_U2_STATUS_SHIFT_MISMATCH = 5,
  ELL_U2_STATUS_NON_TERMINATING = 6,
  ELL_U2_STATUS_INVALID_INDEX = 7,
  ELL_U2_STATUS_RESAMPLE_BUDGET = 8,
  ELL_U2_STATUS_CONFIG = 9,
  /**
   * A verification ran to completion but some check failed.
   */
  ELL_U2_STATUS_CHECK_FAILED = 10,
  ELL_U2_STATUS_INVALID_UTF8 = 11,
  ELL_U2_STATUS_PANIC = 12,
} EllU2Status;

/**
 * Which route evaluates a matrix-element pairing.
 */
typedef enum EllU2Method {
  ELL_U2_METHOD_CLOSED = 0,
  ELL_U2_METHOD_ORACLE = 1,
  ELL_U2_METHOD_REPRESENTATION = 2,
} EllU2Method;

/**
 * Opaque handle holding the nomes `p` and `q`.
 */
typedef struct EllU2Params EllU2Params;

typedef struct EllU2Complex {
  double re;
  double im;
} EllU2Complex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a parameter handle; free it with [`ellu2_params_free`].
 *
 * # Safety
 * `out_handle` must be a valid pointer to writable storage.
 */
enum EllU2Status ellu2_params_new(double p, double q, struct EllU2Params **out_handle);

/**
 * # Safety
 * `handle` must come from [`ellu2_params_new`] and not be freed twice.
 */
void ellu2_params_free(struct EllU2Params *handle);

/**
 * `θ(z; p)`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum EllU2Status ellu2_theta(const struct EllU2Params *handle,
                             struct EllU2Complex z,
                             struct EllU2Complex *result);

/**
 * The elliptic dynamical R-matrix, written row-major into 16 entries.
 *
 * # Safety
 * `result` must point to at least 16 writable elements.
 */
enum EllU2Status ellu2_elliptic_r(const struct EllU2Params *handle,
                                  struct EllU2Complex lambda,
                                  struct EllU2Complex z,
                                  struct EllU2Complex *result);

/**
 * Terminating very-well-poised series with `a1` and trailing parameters
 * `a6, …`.
 *
 * # Safety
 * `trailing` must point to `len` readable elements.
 */
enum EllU2Status ellu2_v_series(const struct EllU2Params *handle,
                                struct EllU2Complex a1,
                                const struct EllU2Complex *trailing,
                                size_t len,
                                struct EllU2Complex *result);

/**
 * Coefficient at `λ` of `⟨t^M_{rs}(w), t^N_{kj}(z)⟩` and its shift.
 *
 * # Safety
 * Pointers must be valid; `shift` may be null.
 */
enum EllU2Status ellu2_pairing(const struct EllU2Params *handle,
                               int32_t m_dim,
                               int32_t r,
                               int32_t s,
                               struct EllU2Complex w,
                               int32_t n_dim,
                               int32_t k,
                               int32_t j,
                               struct EllU2Complex z,
                               struct EllU2Complex lambda,
                               enum EllU2Method method,
                               struct EllU2Complex *result,
                               int32_t *shift);

/**
 * Runs a verification suite (`theta`, …, `all`) and returns the JSON
 * report through `report_json`, to be released with [`ellu2_string_free`].
 * `config_toml` may be null for defaults; `seed` overrides its seed when
 * `override_seed` is nonzero. Returns [`EllU2Status::CheckFailed`] with a
 * report when a check failed.
 *
 * # Safety
 * Strings must be NUL-terminated; `report_json` must be writable.
 */
enum EllU2Status ellu2_verify(const char *suite,
                              const char *config_toml,
                              int32_t override_seed,
                              uint64_t seed,
                              char **report_json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ellu2_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *ellu2_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELLIPTIC_U2_H */
