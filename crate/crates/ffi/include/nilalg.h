#ifndef NILALG_H
#define NILALG_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NilalgOrder {
  NILALG_ORDER_GTR = 0,
  NILALG_ORDER_SUCC = 1,
} NilalgOrder;

typedef enum NilalgStatus {
  NILALG_STATUS_OK = 0,
  NILALG_STATUS_NULL_POINTER = 1,
  NILALG_STATUS_INVALID_ARGUMENT = 2,
  NILALG_STATUS_PARSE = 3,
  /**
   * A size guard or timeout was hit.
   */
  NILALG_STATUS_GUARD = 4,
  /**
   * The operation's hypothesis does not hold for these parameters.
   */
  NILALG_STATUS_HYPOTHESIS = 5,
  NILALG_STATUS_INTERNAL = 6,
} NilalgStatus;

/**
 * Opaque handle to an ideal of `x^n = 0` with its component cache.
 */
typedef struct NilalgIdeal NilalgIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *nilalg_last_error(void);

/**
 * Library version, a static string.
 */
const char *nilalg_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void nilalg_string_free(char *s);

/**
 * Creates the ideal of `x^n = 0` over `F_p`, or the rationals for `p = 0`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NilalgStatus nilalg_ideal_new(uint32_t n, uint64_t p, struct NilalgIdeal **out);

/**
 * # Safety
 * `h` must be null or a handle from [`nilalg_ideal_new`], not yet freed.
 */
void nilalg_ideal_free(struct NilalgIdeal *h);

/**
 * Whether the element written in `expr` lies in the ideal.
 *
 * # Safety
 * `h` must be a live handle, `expr` a nul-terminated string and `out`
 * valid for writes.
 */
enum NilalgStatus nilalg_ideal_contains(const struct NilalgIdeal *h, const char *expr, bool *out);

/**
 * Normal form of `expr` modulo the ideal, as text.
 *
 * # Safety
 * As for [`nilalg_ideal_contains`]; free the result with
 * [`nilalg_string_free`].
 */
enum NilalgStatus nilalg_ideal_reduce(const struct NilalgIdeal *h, const char *expr, char **out);

/**
 * Dimension of the quotient in multidegree `delta[0..d]`.
 *
 * # Safety
 * `delta` must point to `d` readable values and `out` be valid for writes.
 */
enum NilalgStatus nilalg_ideal_quotient_dimension(const struct NilalgIdeal *h,
                                                  const uint32_t *delta,
                                                  size_t d,
                                                  size_t *out);

/**
 * Nilpotency degree on `d` letters, searching degrees up to `max_deg`.
 * Writes 0 when every degree up to `max_deg` is nonzero. If `json` is not
 * null the full report is written there.
 *
 * # Safety
 * `h` must be a live handle, `degree` valid for writes, `json` null or
 * valid for writes.
 */
enum NilalgStatus nilalg_nilpotency_degree(const struct NilalgIdeal *h,
                                           size_t d,
                                           uint32_t max_deg,
                                           uint32_t *degree,
                                           char **json);

/**
 * Whether `expr` is zero modulo the ideal and words strictly greater in
 * the chosen partial order.
 *
 * # Safety
 * As for [`nilalg_ideal_contains`].
 */
enum NilalgStatus nilalg_equiv_zero(const struct NilalgIdeal *h,
                                    const char *expr,
                                    enum NilalgOrder order,
                                    bool *out);

/**
 * Canonical form for `n = 4` over characteristic `p != 2`.
 *
 * # Safety
 * `expr` must be a nul-terminated string and `out` valid for writes; free
 * the result with [`nilalg_string_free`].
 */
enum NilalgStatus nilalg_canonicalize4(uint64_t p, const char *expr, char **out);

/**
 * All bounds on `C_{n,d}` with the best upper and lower ones, as JSON.
 *
 * # Safety
 * `out` must be valid for writes; free the result with
 * [`nilalg_string_free`].
 */
enum NilalgStatus nilalg_bounds_json(uint32_t n,
                                     uint64_t d,
                                     uint64_t p,
                                     bool assume_conjecture_n2,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILALG_H */
