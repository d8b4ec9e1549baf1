#ifndef HRANK_H
#define HRANK_H

/* This file is generated by cbindgen from hrank-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum HrankStatus {
  // Success; for verification, the verdict "holds".
  HRANK_OK = 0,
  // A hypothesis of the rank inequality was violated.
  HRANK_HYPOTHESIS_VIOLATED = 2,
  // Unparsable input or invalid arguments.
  HRANK_USAGE_ERROR = 3,
  // An internal certification failed or the result is indeterminate.
  HRANK_INTERNAL_ERROR = 4,
  // A required pointer argument was null.
  HRANK_NULL_POINTER = 5,
} HrankStatus;

// Opaque handle to an exact polarized polynomial.
typedef struct HrankPoly HrankPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread, or null.
// The pointer stays valid until the next failing call on the thread.
const char *hrank_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be a pointer previously returned by one of the
// string-producing functions here and not yet freed.
void hrank_string_free(char *s);

// Parses an expression into a polynomial handle.
//
// `field` selects the scalar field (`"qi"` or `"qi-sqrtS"`; null means
// `"qi"`). On success writes the new handle into `out` and returns
// `HrankOk`; the handle must be released with [`hrank_poly_free`].
//
// # Safety
// `expr` must be a valid NUL-terminated string; `out` must be a valid
// pointer; `field` must be null or a valid NUL-terminated string.
enum HrankStatus hrank_poly_parse(const char *expr,
                                  size_t n,
                                  const char *field,
                                  struct HrankPoly **out);

// Releases a polynomial handle. Null is ignored.
//
// # Safety
// `p` must be a handle from [`hrank_poly_parse`] and not yet freed.
void hrank_poly_free(struct HrankPoly *p);

// Exact hermitian rank of the polynomial.
//
// # Safety
// `p` and `out_rank` must be valid pointers.
enum HrankStatus hrank_poly_rank(const struct HrankPoly *p, size_t *out_rank);

// Bidegree of the polynomial. For the zero polynomial `out_is_zero` is
// set to 1 and the degree slots are left at 0.
//
// # Safety
// All pointers must be valid.
enum HrankStatus hrank_poly_bidegree(const struct HrankPoly *p,
                                     uint32_t *out_j,
                                     uint32_t *out_k,
                                     int32_t *out_is_zero);

// Whether the polynomial is real-valued on the diagonal (1 or 0).
//
// # Safety
// `p` and `out` must be valid pointers.
enum HrankStatus hrank_poly_is_real_valued(const struct HrankPoly *p, int32_t *out);

// Renders the polynomial back to expression text (parseable).
// Returns null on allocation failure.
//
// # Safety
// `p` must be a valid handle.
char *hrank_poly_to_string(const struct HrankPoly *p);

// The multinomial bound `C(r + d - 1, d)` on the rank of a d-th power,
// saturated to `u64::MAX` on overflow.
uint64_t hrank_multinomial_bound(size_t r, uint32_t d);

// Verifies `rank(Q P^d) >= rank(P^d) = C(rank P + d - 1, d)` and writes
// a JSON report into `out_json` (caller frees via [`hrank_string_free`]).
//
// `q_kind` is `"poly"`, `"reciprocal"`, or `"exp"` (null means poly);
// `point` is an optional comma-separated diagonal base point. The return
// status mirrors the CLI exit code: `HrankOk` for "holds",
// `HrankHypothesisViolated`, or `HrankInternalError` for indeterminate.
//
// # Safety
// `p_expr` and `q_expr` must be valid NUL-terminated strings; `out_json`
// must be a valid pointer; optional string arguments may be null.
enum HrankStatus hrank_verify_json(const char *p_expr,
                                   const char *q_expr,
                                   const char *q_kind,
                                   size_t n,
                                   uint32_t d,
                                   const char *field,
                                   const char *point,
                                   char **out_json);

// Runs the counterexample gallery and writes the JSON case list.
// Returns `HrankOk` when every case passes.
//
// # Safety
// `out_json` must be a valid pointer.
enum HrankStatus hrank_gallery_json(char **out_json);

// Signed square decomposition counts: writes the number of positive and
// negative squares for a real-valued polynomial.
//
// # Safety
// All pointers must be valid.
enum HrankStatus hrank_poly_signature(const struct HrankPoly *p,
                                      size_t *out_positive,
                                      size_t *out_negative);

// The scalar field a handle was parsed under, as a string.
//
// # Safety
// `p` must be a valid handle.
char *hrank_poly_field(const struct HrankPoly *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HRANK_H */
