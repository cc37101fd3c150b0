#ifndef ARS_H
#define ARS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. The numbering matches the `ars` exit codes where they
 * overlap.
 */
typedef enum ArsStatus {
  ARS_STATUS_OK = 0,
  /**
   * The question was answered and the answer is no (unjoinable peak).
   */
  ARS_STATUS_FAILS = 1,
  /**
   * Bad JSON, unknown name or property, out-of-range index, capacity.
   */
  ARS_STATUS_INVALID_INPUT = 2,
  ARS_STATUS_PRECONDITION = 3,
  ARS_STATUS_FUEL_EXHAUSTED = 4,
  ARS_STATUS_NULL_POINTER = 5,
  /**
   * A bug: the library panicked. The handle arguments are still valid.
   */
  ARS_STATUS_INTERNAL = 6,
} ArsStatus;

/**
 * Which join construction `ars_join` uses. Passed as a `uint32_t` so that
 * out-of-range values are reported instead of being undefined behaviour.
 */
typedef enum ArsJoinMethod {
  ARS_JOIN_METHOD_NEWMAN = 0,
  ARS_JOIN_METHOD_GENERALIZED_NEWMAN = 1,
  ARS_JOIN_METHOD_WN_UN = 2,
  ARS_JOIN_METHOD_EXHAUSTIVE = 3,
} ArsJoinMethod;

/**
 * A reduction path; indices refer to the system it came from.
 */
typedef struct ArsPath ArsPath;

/**
 * An immutable finite rewriting system.
 */
typedef struct ArsSystem ArsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on this thread.
 */
const char *ars_last_error(void);

/**
 * Library version, a static string.
 */
const char *ars_version(void);

/**
 * Build a system from a JSON document such as
 * `{"elements": ["a", "b"], "steps": [["a", "b"]]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ArsStatus ars_system_from_json(const char *json, struct ArsSystem **out);

/**
 * # Safety
 * `sys` must come from `ars_system_from_json` and not be freed twice.
 */
void ars_system_free(struct ArsSystem *sys);

/**
 * Number of elements; 0 for NULL.
 *
 * # Safety
 * `sys` must be NULL or a live handle.
 */
size_t ars_system_size(const struct ArsSystem *sys);

/**
 * Index of the element called `name`.
 *
 * # Safety
 * `sys` live, `name` nul-terminated, `out` writable.
 */
enum ArsStatus ars_element_index(const struct ArsSystem *sys, const char *name, size_t *out);

/**
 * Decide an element-level property such as "CR" or "SN" at `element`.
 *
 * # Safety
 * `sys` live, `property` nul-terminated, `out` writable.
 */
enum ArsStatus ars_check_element(const struct ArsSystem *sys,
                                 size_t element_index,
                                 const char *property,
                                 bool *out);

/**
 * Decide a property of the whole system: any element-level label (meaning
 * "at every element") or one of BP, RP, RPminus, Inc, FB, Dec.
 *
 * # Safety
 * `sys` live, `property` nul-terminated, `out` writable.
 */
enum ArsStatus ars_check_global(const struct ArsSystem *sys, const char *property, bool *out);

/**
 * The `ars check --json` report: the element report when `element_index`
 * is in range, the global report when it is `SIZE_MAX`. Free with
 * `ars_string_free`.
 *
 * # Safety
 * `sys` live, `out` writable.
 */
enum ArsStatus ars_report_json(const struct ArsSystem *sys, size_t element_index, char **out);

/**
 * DOT rendering of the system. Free with `ars_string_free`.
 *
 * # Safety
 * `sys` live, `out` writable.
 */
enum ArsStatus ars_to_dot(const struct ArsSystem *sys, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void ars_string_free(char *s);

/**
 * Reduce a strongly normalizing element to its normal form. `fuel` 0 means
 * "enough". Fails with `ARS_STATUS_PRECONDITION` when the element has an
 * infinite reduction.
 *
 * # Safety
 * `sys` live, `out` writable.
 */
enum ArsStatus ars_normalize(const struct ArsSystem *sys,
                             size_t element_index,
                             size_t fuel,
                             struct ArsPath **out);

/**
 * Join the peak `left <-* apex ->* right`, writing the two valley paths.
 * Returns `ARS_STATUS_FAILS` when the exhaustive method finds no common
 * reduct, `ARS_STATUS_PRECONDITION` when a construction's hypotheses fail.
 *
 * # Safety
 * `sys` live; `from_left` and `from_right` writable.
 */
enum ArsStatus ars_join(const struct ArsSystem *sys,
                        size_t apex,
                        size_t left,
                        size_t right,
                        uint32_t method,
                        struct ArsPath **from_left,
                        struct ArsPath **from_right);

/**
 * Number of elements on the path (steps + 1); 0 for NULL.
 *
 * # Safety
 * `path` must be NULL or live.
 */
size_t ars_path_len(const struct ArsPath *path);

/**
 * Element index at position `i`, or `SIZE_MAX` when out of range.
 *
 * # Safety
 * `path` must be NULL or live.
 */
size_t ars_path_at(const struct ArsPath *path, size_t i);

/**
 * # Safety
 * `path` must be NULL or come from this library, freed once.
 */
void ars_path_free(struct ArsPath *path);

/**
 * Whether the converse of the step relation is well-founded, decided by
 * all notions at once; fails with `ARS_STATUS_INVALID_INPUT` when the system
 * has more than `limit` elements (predicates are enumerated).
 *
 * # Safety
 * `sys` live, `out` writable.
 */
enum ArsStatus ars_well_founded(const struct ArsSystem *sys, size_t limit, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARS_H */
