#ifndef FLOERCONE_H
#define FLOERCONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit-code contract.
 */
typedef enum FcStatus {
  /**
   * Success.
   */
  FcStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  FcStatus_NullPointer = 1,
  /**
   * The input could not be parsed or violates a precondition.
   */
  FcStatus_InvalidInput = 2,
  /**
   * Two computation engines disagreed; the result is not trustworthy.
   */
  FcStatus_VerificationFailed = 3,
} FcStatus;

/**
 * An opaque knot handle.
 */
typedef struct FcKnot FcKnot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A description of the most recent failure on this thread, or null.
 * The pointer stays valid until the next failing call on the thread.
 */
const char *fc_last_error(void);

/**
 * The library version as a static string.
 */
const char *fc_version(void);

/**
 * Creates the staircase model of the torus knot T(a, b).
 *
 * # Safety
 * `out` must be a valid pointer to an `FcKnot*`.
 */
enum FcStatus fc_knot_torus(uint64_t a, uint64_t b, struct FcKnot **out);

/**
 * Creates a staircase knot from an Alexander polynomial such as
 * `"t^2 - t + 1 - t^-1 + t^-2"`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` as in
 * [`fc_knot_torus`].
 */
enum FcStatus fc_knot_from_alexander(const char *text, struct FcKnot **out);

/**
 * Creates a knot from an explicit bifiltered complex in the CFK JSON
 * schema. Only the hat flavor is available for such knots.
 *
 * # Safety
 * As in [`fc_knot_from_alexander`].
 */
enum FcStatus fc_knot_from_cfk_json(const char *json, struct FcKnot **out);

/**
 * Releases a knot handle. Null is ignored.
 *
 * # Safety
 * `knot` must be a handle from one of the constructors, not yet freed.
 */
void fc_knot_free(struct FcKnot *knot);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void fc_string_free(char *s);

/**
 * The Seifert genus of the knot model.
 *
 * # Safety
 * `knot` must be a live handle; `out` a valid pointer.
 */
enum FcStatus fc_knot_genus(const struct FcKnot *knot, int64_t *out);

/**
 * Hat-flavor dimensions per Spin^c class as JSON
 * `{"0": d0, "1": d1, ...}`.
 *
 * # Safety
 * `knot` must be a live handle; `out` a valid pointer to a `char*`.
 */
enum FcStatus fc_hat_dims_json(const struct FcKnot *knot, int64_t p, char **out);

/**
 * Plus-flavor homology per class as JSON
 * `{"0": {"tower_bottom": 0, "torsion": [{"length": k, "top": q}]}, ...}`,
 * tower-normalised; both engines are run and compared.
 *
 * # Safety
 * As in [`fc_hat_dims_json`].
 */
enum FcStatus fc_plus_table_json(const struct FcKnot *knot, int64_t p, char **out);

/**
 * The full reducibility obstruction report as JSON.
 *
 * # Safety
 * As in [`fc_hat_dims_json`].
 */
enum FcStatus fc_obstruction_report_json(const struct FcKnot *knot, int64_t p, char **out);

/**
 * The d-invariant of `n`-surgery in class `[s]`, for `n >= 2g-1`, as an
 * exact fraction `*num / *den`.
 *
 * # Safety
 * `knot` must be a live handle; `num` and `den` valid pointers.
 */
enum FcStatus fc_d_invariant(const struct FcKnot *knot,
                             int64_t n,
                             int64_t s,
                             int64_t *num,
                             int64_t *den);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FLOERCONE_H */
