#ifndef Z8CODES_H
#define Z8CODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Z8Metric {
  Z8_METRIC_HAMMING = 0,
  Z8_METRIC_LEE = 1,
  Z8_METRIC_EUCLIDEAN = 2,
  Z8_METRIC_HOMOGENEOUS = 3,
} Z8Metric;

/**
 * Result of every fallible call.
 */
typedef enum Z8Status {
  Z8_STATUS_OK = 0,
  Z8_STATUS_NULL_POINTER = 1,
  Z8_STATUS_INVALID_UTF8 = 2,
  Z8_STATUS_PARSE = 3,
  Z8_STATUS_PARAMETER = 4,
  Z8_STATUS_DIMENSION = 5,
  Z8_STATUS_BUDGET = 6,
  Z8_STATUS_CONSISTENCY = 7,
  Z8_STATUS_PANIC = 8,
} Z8Status;

/**
 * Opaque handle to a linear code over Z8.
 */
typedef struct Z8Code Z8Code;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a generator matrix (one row per line, digits separated by spaces,
 * `#` comments) into a new code.
 *
 * # Safety
 * `matrix` must be a NUL-terminated string and `out` a writable pointer.
 */
enum Z8Status z8_code_from_text(const char *matrix, struct Z8Code **out);

/**
 * Builds a family code from a spec such as `simplex-alpha:k=2` or `octacode`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a writable pointer.
 */
enum Z8Status z8_code_from_family(const char *spec, struct Z8Code **out);

/**
 * Releases a code. Null is ignored.
 *
 * # Safety
 * `code` must come from this library and not be used afterwards.
 */
void z8_code_free(struct Z8Code *code);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_code_length(const struct Z8Code *code, size_t *out);

/**
 * Writes the type (k0, k1, k2) into `out[0..3]`.
 *
 * # Safety
 * `code` must be a live handle and `out` must point to three writable `size_t`.
 */
enum Z8Status z8_code_type(const struct Z8Code *code, size_t *out);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_code_cardinality_log2(const struct Z8Code *code, uint64_t *out);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_code_dual(const struct Z8Code *code, struct Z8Code **out);

/**
 * Exact covering radius at the default work budgets.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_covering_radius(const struct Z8Code *code, enum Z8Metric metric, uint32_t *out);

/**
 * Minimum nonzero weight by enumeration; 0 for the zero code.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_min_weight(const struct Z8Code *code, enum Z8Metric metric, uint32_t *out);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_code_is_self_orthogonal(const struct Z8Code *code, bool *out);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum Z8Status z8_code_is_self_dual(const struct Z8Code *code, bool *out);

/**
 * Generator matrix in the text form accepted by `z8_code_from_text`.
 *
 * # Safety
 * `code` must be a live handle and `out` writable; free the string with
 * `z8_string_free`.
 */
enum Z8Status z8_code_generator_text(const struct Z8Code *code, char **out);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void z8_string_free(char *s);

/**
 * Gray image of `n` symbols, written as `4 * n` bits (one per byte).
 *
 * # Safety
 * `v` must hold `n` readable bytes and `out_bits` `4 * n` writable bytes.
 */
enum Z8Status z8_gray_map(const uint8_t *v, size_t n, uint8_t *out_bits);

/**
 * # Safety
 * `v` must hold `n` readable bytes and `out` be writable.
 */
enum Z8Status z8_weight(const uint8_t *v, size_t n, enum Z8Metric metric, uint32_t *out);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *z8_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *z8_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* Z8CODES_H */
