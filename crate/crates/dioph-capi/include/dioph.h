#ifndef DIOPH_H
#define DIOPH_H

/* Generated by cbindgen from dioph-capi; do not edit by hand. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Basis construction method for `dioph_solve`.
 */
typedef enum DiophMethod {
  /**
   * Congruence kernel of `K` modulo `d` (the default).
   */
  DIOPH_METHOD_DIRECT = 0,
  /**
   * Trailing columns of the right transform of the Smith form of `A`.
   */
  DIOPH_METHOD_SNF = 1,
  /**
   * Lift a basis of `M` along the invariant factors of `S/M`.
   */
  DIOPH_METHOD_LIFT_INV = 2,
  /**
   * Lift a basis of `M` along the elementary divisors of `S/M`.
   */
  DIOPH_METHOD_LIFT_ELEM = 3,
  /**
   * Lift a basis of `M` one prime of the index `[S : M]` at a time.
   */
  DIOPH_METHOD_LIFT_PRIME = 4,
  /**
   * Shortcut valid only when `d` is prime.
   */
  DIOPH_METHOD_PRIME_D = 5,
} DiophMethod;

/**
 * Result of every fallible call in this API.
 */
typedef enum DiophStatus {
  DIOPH_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DIOPH_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DIOPH_STATUS_INVALID_UTF8 = 2,
  /**
   * The input text or JSON does not describe a rectangular integer matrix.
   */
  DIOPH_STATUS_PARSE_ERROR = 3,
  /**
   * Operand shapes or values do not fit the requested operation.
   */
  DIOPH_STATUS_SHAPE_ERROR = 4,
  /**
   * The method requires a prime `d` but it is composite (or a unit).
   */
  DIOPH_STATUS_NOT_PRIME = 5,
  /**
   * The ring instance does not support the operation.
   */
  DIOPH_STATUS_UNSUPPORTED = 6,
  /**
   * The randomized order-vector search was exhausted.
   */
  DIOPH_STATUS_NOT_LARGEST_FACTOR = 7,
  /**
   * A quotient was requested for lattices without inclusion.
   */
  DIOPH_STATUS_NOT_A_SUBLATTICE = 8,
  /**
   * An enumeration would exceed the configured bound.
   */
  DIOPH_STATUS_BOUND_EXCEEDED = 9,
  /**
   * An internal invariant failed; indicates a bug, not bad input.
   */
  DIOPH_STATUS_INTERNAL_ERROR = 10,
  /**
   * `verify` was requested and at least one check failed.
   */
  DIOPH_STATUS_VERIFICATION_FAILED = 11,
  /**
   * A panic was caught at the ABI boundary.
   */
  DIOPH_STATUS_PANIC = 12,
} DiophStatus;

/**
 * Opaque handle to an exact integer matrix.
 */
typedef struct DiophMatrix DiophMatrix;

/**
 * Opaque handle to a computed report.
 */
typedef struct DiophReport DiophReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message of this thread, or null if the last call succeeded.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *dioph_last_error(void);

/**
 * Parse a matrix from text: either the plain format (header `m n`, then
 * `m` rows of integers) or JSON (`{"matrix": [[...]]}`, decimal strings
 * for entries beyond 64 bits).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum DiophStatus dioph_matrix_parse(const char *text, struct DiophMatrix **out);

/**
 * Build a matrix from a row-major `rows x cols` array of 64-bit entries.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values; `out` must be
 * writable.
 */
enum DiophStatus dioph_matrix_from_i64(size_t rows,
                                       size_t cols,
                                       const int64_t *entries,
                                       struct DiophMatrix **out);

/**
 * Release a matrix handle. Null is a no-op.
 *
 * # Safety
 * `m` must have come from a constructor of this API and not been freed.
 */
void dioph_matrix_free(struct DiophMatrix *m);

/**
 * Reduce the system: rank, nullity, `d`, `K`, and the column permutation.
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum DiophStatus dioph_reduce(const struct DiophMatrix *m, struct DiophReport **out);

/**
 * Reduction plus the module structure of `S/M` and `U/S`.
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum DiophStatus dioph_structure(const struct DiophMatrix *m, struct DiophReport **out);

/**
 * Compute a basis of the solution lattice `S`.
 *
 * `verify` re-checks the basis against independent oracles; a mismatch
 * returns `DIOPH_STATUS_VERIFICATION_FAILED` with the report still written.
 * `seed` drives the randomized search inside the lifting methods.
 * `brute_bound` caps the exhaustive check (0 selects the built-in default).
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum DiophStatus dioph_solve(const struct DiophMatrix *m,
                             enum DiophMethod method,
                             bool verify,
                             uint64_t seed,
                             uint64_t brute_bound,
                             struct DiophReport **out);

/**
 * Serialize a report as JSON. The string must be released with
 * `dioph_string_free`.
 *
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum DiophStatus dioph_report_to_json(const struct DiophReport *r, char **out);

/**
 * Render a report as the human-readable table. The string must be released
 * with `dioph_string_free`.
 *
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum DiophStatus dioph_report_to_text(const struct DiophReport *r, char **out);

/**
 * Verification verdict of a report: 1 verified, 0 failed, -1 not recorded.
 *
 * # Safety
 * `r` must be a live report handle.
 */
int32_t dioph_report_verified(const struct DiophReport *r);

/**
 * Release a report handle. Null is a no-op.
 *
 * # Safety
 * `r` must have come from this API and not been freed.
 */
void dioph_report_free(struct DiophReport *r);

/**
 * Release a string returned by this API. Null is a no-op.
 *
 * # Safety
 * `s` must have come from this API and not been freed.
 */
void dioph_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIOPH_H */
