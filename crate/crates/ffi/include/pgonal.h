#ifndef PGONAL_H
#define PGONAL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a C ABI call. Zero is success.
 */
typedef enum PgonalStatus {
  PGONAL_STATUS_OK = 0,
  PGONAL_STATUS_NULL_POINTER = 1,
  PGONAL_STATUS_INVALID_UTF8 = 2,
  PGONAL_STATUS_PANIC = 3,
  PGONAL_STATUS_PARSE_ERROR = 10,
  PGONAL_STATUS_SCHEMA_ERROR = 11,
  /**
   * Malformed field, point, map or curve data.
   */
  PGONAL_STATUS_INVALID_INPUT = 12,
  PGONAL_STATUS_DEGREE_TOO_LARGE = 13,
  PGONAL_STATUS_GENUS_TOO_SMALL = 14,
  /**
   * The (m, p) pair admits several p-gonal groups.
   */
  PGONAL_STATUS_EXCEPTIONAL_CASE = 20,
  PGONAL_STATUS_NOT_QUASI_RATIONAL = 21,
  PGONAL_STATUS_NO_MATCHING_MAP = 22,
  PGONAL_STATUS_NON_UNIQUE_MAP = 23,
  PGONAL_STATUS_AMBIGUOUS_CHARACTER = 24,
  /**
   * Cocycle or holonomy checks failed.
   */
  PGONAL_STATUS_COCYCLE_ERROR = 25,
  /**
   * A certified norm obstruction; no descent through this route.
   */
  PGONAL_STATUS_SPLITTING_FAILED = 26,
  PGONAL_STATUS_CERTIFICATE_INVALID = 27,
  /**
   * Any other library error; the message names it.
   */
  PGONAL_STATUS_OTHER = 99,
} PgonalStatus;

/**
 * A parsed descent problem.
 */
typedef struct PgonalProblem PgonalProblem;

/**
 * A descent result, either computed or read back from a document.
 */
typedef struct PgonalResult PgonalResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a success.
 *
 * The pointer stays valid until the next pgonal call on the same thread.
 */
const char *pgonal_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pgonal_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pgonal_string_free(char *s);

/**
 * Reads a `problem` document.
 *
 * `seed` drives the primitive-element search when the context lists a
 * subfield. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PgonalStatus pgonal_problem_parse(const char *json, uint64_t seed, struct PgonalProblem **out);

/**
 * Genus of the problem's curve.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum PgonalStatus pgonal_problem_genus(const struct PgonalProblem *problem, int64_t *out);

/**
 * Releases a problem handle. Null is ignored.
 *
 * # Safety
 * `problem` must come from [`pgonal_problem_parse`] and not have been freed.
 */
void pgonal_problem_free(struct PgonalProblem *problem);

/**
 * Descends the problem and certifies the result.
 *
 * A `max_field_degree` of zero selects the library default.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum PgonalStatus pgonal_descend(const struct PgonalProblem *problem,
                                 uint64_t seed,
                                 size_t max_field_degree,
                                 struct PgonalResult **out);

/**
 * Reads a `result` document, for instance one written by another process.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PgonalStatus pgonal_result_parse(const char *json, uint64_t seed, struct PgonalResult **out);

/**
 * Checks every certificate clause of `result` against `problem`.
 *
 * # Safety
 * Both handles must be live.
 */
enum PgonalStatus pgonal_verify(const struct PgonalProblem *problem,
                                const struct PgonalResult *result);

/**
 * Degree of the output field over the base field.
 *
 * # Safety
 * `result` must be a live handle and `out` a valid pointer.
 */
enum PgonalStatus pgonal_result_degree(const struct PgonalResult *result, size_t *out);

/**
 * The canonical `result` document. Free `*out` with [`pgonal_string_free`].
 *
 * # Safety
 * `result` must be a live handle and `out` a valid pointer.
 */
enum PgonalStatus pgonal_result_to_json(const struct PgonalResult *result, char **out);

/**
 * Releases a result handle. Null is ignored.
 *
 * # Safety
 * `result` must come from this library and not have been freed.
 */
void pgonal_result_free(struct PgonalResult *result);

/**
 * Whether curves with `m` branch points over `p` have a unique p-gonal group.
 *
 * # Safety
 * `unique` must be a valid pointer.
 */
enum PgonalStatus pgonal_classify(size_t m, uint64_t p, bool *unique);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PGONAL_H */
