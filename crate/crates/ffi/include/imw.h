#ifndef IMW_H
#define IMW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum ImwStatus {
  IMW_STATUS_OK = 0,
  IMW_STATUS_NULL_POINTER = 1,
  IMW_STATUS_INVALID_UTF8 = 2,
  IMW_STATUS_SYNTAX = 3,
  IMW_STATUS_VALIDATION = 4,
  IMW_STATUS_LIMIT_EXCEEDED = 5,
  IMW_STATUS_INTERNAL = 6,
} ImwStatus;

/**
 * Opaque handle to a validated finite monoid.
 */
typedef struct ImwMonoid ImwMonoid;

/**
 * Verdict values: 1 holds, 0 fails, -1 not applicable (monoid not inverse).
 */
typedef struct ImwVerdicts {
  int8_t inverse;
  int8_t e_unitary;
  int8_t f_inverse;
  int8_t clifford;
  int8_t weakly_schreier;
} ImwVerdicts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an `mtab v1` document into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum ImwStatus imw_monoid_parse_mtab(const char *text, struct ImwMonoid **out);

/**
 * Builds a monoid from a row-major `n * n` table with identity `id`.
 *
 * # Safety
 * `table` must point to `n * n` readable values and `out` must be valid.
 */
enum ImwStatus imw_monoid_from_table(size_t n,
                                     const size_t *table,
                                     size_t id,
                                     struct ImwMonoid **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not have been freed.
 */
void imw_monoid_free(struct ImwMonoid *m);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t imw_monoid_size(const struct ImwMonoid *m);

/**
 * Stores `x * y` in `*out`.
 *
 * # Safety
 * `m` must be a live handle and `out` valid.
 */
enum ImwStatus imw_monoid_mul(const struct ImwMonoid *m, size_t x, size_t y, size_t *out);

/**
 * Runs all five predicates.
 *
 * # Safety
 * `m` must be a live handle and `out` valid.
 */
enum ImwStatus imw_monoid_check(const struct ImwMonoid *m, struct ImwVerdicts *out);

/**
 * The full analysis report as sorted-key JSON (schema 1).
 *
 * # Safety
 * `m` must be a live handle, `name` null or a nul-terminated string, and
 * `out` valid.
 */
enum ImwStatus imw_monoid_report_json(const struct ImwMonoid *m, const char *name, char **out);

/**
 * Serializes to `mtab v1`.
 *
 * # Safety
 * `m` must be a live handle and `out` valid.
 */
enum ImwStatus imw_monoid_to_mtab(const struct ImwMonoid *m, char **out);

/**
 * Brute-force isomorphism search. Sets `*found` to 1 or 0; when found and
 * `forward` is non-null, writes the bijection `a → b` into `forward`,
 * which must hold `imw_monoid_size(a)` values.
 *
 * # Safety
 * `a` and `b` must be live handles, `found` valid, `forward` null or
 * large enough.
 */
enum ImwStatus imw_monoid_is_isomorphic(const struct ImwMonoid *a,
                                        const struct ImwMonoid *b,
                                        size_t max_n,
                                        int32_t *found,
                                        size_t *forward);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void imw_string_free(char *s);

/**
 * Message for the last failure on this thread; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *imw_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IMW_H */
