#ifndef MZV_H
#define MZV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum MzvStatus {
  MZV_STATUS_OK = 0,
  MZV_STATUS_NULL_POINTER = 1,
  MZV_STATUS_INVALID_UTF8 = 2,
  MZV_STATUS_PARSE_ERROR = 3,
  MZV_STATUS_PRECONDITION_VIOLATED = 4,
  MZV_STATUS_DOMAIN_ERROR = 5,
  /**
   * The call completed but at least one check failed.
   */
  MZV_STATUS_VERIFICATION_FAILED = 6,
  MZV_STATUS_INTERNAL = 7,
  MZV_STATUS_PANIC = 8,
} MzvStatus;

/**
 * Opaque evaluator with a fixed precision and a value cache.
 */
typedef struct MzvEvaluator MzvEvaluator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an evaluator for `digits` correct decimal digits. Returns null if
 * `digits` is 0.
 */
struct MzvEvaluator *mzv_evaluator_new(uint32_t digits);

/**
 * # Safety
 * `ev` must come from [`mzv_evaluator_new`] and not be used afterwards.
 */
void mzv_evaluator_free(struct MzvEvaluator *ev);

/**
 * `ζ(index)` as a decimal string, e.g. index `"2,1"`.
 *
 * # Safety
 * `ev` must be a live evaluator, `index` a NUL-terminated string and `out`
 * a writable pointer.
 */
enum MzvStatus mzv_zeta(const struct MzvEvaluator *ev, const char *index, char **out);

/**
 * `Li_index(z^e1, ..., z^en)` as a decimal string; `z` is a rational such
 * as `"1/2"` and `exponents` has `n_exponents` entries.
 *
 * # Safety
 * Pointers as for [`mzv_zeta`]; `exponents` must point to `n_exponents`
 * values.
 */
enum MzvStatus mzv_li(const struct MzvEvaluator *ev,
                      const char *index,
                      const uint32_t *exponents,
                      size_t n_exponents,
                      const char *z,
                      char **out);

/**
 * Verifies identity `id` (e.g. `"thm1_i"`) at `weight`, writing a JSON
 * array of reports. Returns `MZV_STATUS_VERIFICATION_FAILED` when a check
 * fails; the JSON is written in that case too.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out_json` writable.
 */
enum MzvStatus mzv_verify_json(const char *id, uint32_t weight, uint32_t digits, char **out_json);

/**
 * Shuffle product of two word combinations such as `"xy"` or `"xy + 2*yy"`.
 *
 * # Safety
 * Inputs must be NUL-terminated strings and `out` writable.
 */
enum MzvStatus mzv_shuffle(const char *a, const char *b, char **out);

/**
 * Stuffle product of two index combinations such as `"2,1"`.
 *
 * # Safety
 * Inputs must be NUL-terminated strings and `out` writable.
 */
enum MzvStatus mzv_stuffle(const char *a, const char *b, char **out);

/**
 * Relation matrix of class `"r21"` or `"r111"` at `weight`, as CSV.
 *
 * # Safety
 * `class` must be a NUL-terminated string and `out_csv` writable.
 */
enum MzvStatus mzv_relations_csv(uint32_t weight, const char *class_, char **out_csv);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mzv_string_free(char *s);

/**
 * Message of the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mzv_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MZV_H */
