#ifndef MER_H
#define MER_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MerStatus {
  MER_STATUS_OK = 0,
  MER_STATUS_NULL_POINTER = 1,
  MER_STATUS_INVALID_INPUT = 2,
  MER_STATUS_INVALID_T = 3,
  MER_STATUS_INFEASIBLE = 4,
  MER_STATUS_COLLINEAR_INPUT = 5,
  MER_STATUS_SIZE_GUARD = 6,
  MER_STATUS_INVALID_PARAMS = 7,
  MER_STATUS_PANIC = 8,
} MerStatus;

/**
 * Opaque point set.
 */
typedef struct MerPointSet MerPointSet;

/**
 * Opaque solver result.
 */
typedef struct MerResult MerResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null if none failed.
 * The string stays valid until the next failing call on this thread.
 */
const char *mer_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mer_version(void);

/**
 * Builds a point set from `n` coordinates in `xs` and `ys`.
 *
 * # Safety
 * `xs` and `ys` must point to `n` readable doubles; `out` must be writable.
 */
enum MerStatus mer_pointset_new(const double *xs,
                                const double *ys,
                                size_t n,
                                struct MerPointSet **out);

/**
 * # Safety
 * `ps` must come from [`mer_pointset_new`] and not be freed twice.
 */
void mer_pointset_free(struct MerPointSet *ps);

/**
 * # Safety
 * `ps` must be a live point set or null.
 */
size_t mer_pointset_len(const struct MerPointSet *ps);

/**
 * Whether the set is handled with exact integer arithmetic.
 *
 * # Safety
 * `ps` must be a live point set or null.
 */
bool mer_pointset_is_integer(const struct MerPointSet *ps);

/**
 * Exact minimum-area rectangle leaving out at most `t` points.
 *
 * # Safety
 * `ps` must be a live point set; `out` must be writable.
 */
enum MerStatus mer_solve_exact(const struct MerPointSet *ps,
                               size_t t,
                               bool collinear_robust,
                               struct MerResult **out);

/**
 * Brute-force reference solver for small inputs.
 *
 * # Safety
 * `ps` must be a live point set; `out` must be writable.
 */
enum MerStatus mer_solve_oracle(const struct MerPointSet *ps, size_t t, struct MerResult **out);

/**
 * Approximate solver on a seeded random sample.
 *
 * # Safety
 * `ps` must be a live point set; `out` must be writable.
 */
enum MerStatus mer_solve_sampled(const struct MerPointSet *ps,
                                 size_t t,
                                 double epsilon,
                                 double c,
                                 uint64_t seed,
                                 bool collinear_robust,
                                 struct MerResult **out);

/**
 * # Safety
 * `r` must come from a solve call and not be freed twice.
 */
void mer_result_free(struct MerResult *r);

/**
 * Rectangle area, or NaN for a null handle.
 *
 * # Safety
 * `r` must be a live result or null.
 */
double mer_result_area(const struct MerResult *r);

/**
 * Writes the corners counterclockwise as `x0, y0, ..., x3, y3`.
 *
 * # Safety
 * `r` must be a live result; `out` must have room for 8 doubles.
 */
enum MerStatus mer_result_corners(const struct MerResult *r, double *out);

/**
 * Writes the five support indices: two base points, the opposite point
 * and the two side points.
 *
 * # Safety
 * `r` must be a live result; `out` must have room for 5 values.
 */
enum MerStatus mer_result_supports(const struct MerResult *r, size_t *out);

/**
 * # Safety
 * `r` must be a live result or null.
 */
size_t mer_result_enclosed_count(const struct MerResult *r);

/**
 * Borrows the sorted outlier indices. The array lives as long as `r`.
 *
 * # Safety
 * `r` must be a live result; `data` and `len` must be writable.
 */
enum MerStatus mer_result_outliers(const struct MerResult *r, const size_t **data, size_t *len);

/**
 * The result document as JSON. Free the string with [`mer_string_free`].
 *
 * # Safety
 * `r` must be a live result; `out` must be writable.
 */
enum MerStatus mer_result_to_json(const struct MerResult *r, bool with_timings, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mer_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MER_H */
