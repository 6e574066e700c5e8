#ifndef LATNORM_H
#define LATNORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LnStatus {
  LN_STATUS_OK = 0,
  LN_STATUS_NULL_POINTER = 1,
  LN_STATUS_INVALID_UTF8 = 2,
  /**
   * Rejected input: bad polynomial, units, parameters or document.
   */
  LN_STATUS_INVALID = 3,
  /**
   * Enumeration budget or zeta cutoff exhausted.
   */
  LN_STATUS_LIMIT = 4,
  LN_STATUS_IO = 5,
  LN_STATUS_OUT_OF_RANGE = 6,
  LN_STATUS_PANIC = 7,
} LnStatus;

/**
 * Exact counts with the estimate columns attached.
 */
typedef struct LnCountTable LnCountTable;

/**
 * A field with its unit system.
 */
typedef struct LnField LnField;

typedef struct LnCountRow {
  uint64_t k;
  uint32_t a;
  uint64_t b;
  double n_raw;
  uint64_t n;
  uint64_t f;
} LnCountRow;

typedef struct LnErrorProfile {
  uint64_t rows;
  uint64_t max_error;
  double zero_fraction;
} LnErrorProfile;

typedef struct LnErrorSummary {
  enum LnStatus status;
  /**
   * Bytes in the message, without the terminating NUL.
   */
  size_t message_len;
} LnErrorSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a field document from a JSON string.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum LnStatus ln_field_from_json(const char *json, struct LnField **out);

/**
 * Loads a field document from a file.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be writable.
 */
enum LnStatus ln_field_load(const char *path, struct LnField **out);

/**
 * # Safety
 * `field` must come from `ln_field_load` or `ln_field_from_json`, or be null.
 */
void ln_field_free(struct LnField *field);

/**
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_field_degree(const struct LnField *field, size_t *out);

/**
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_field_regulator(const struct LnField *field, double *out);

/**
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_field_log_volume(const struct LnField *field, double *out);

/**
 * Writes the `n` real embeddings of `θ` in increasing order.
 *
 * # Safety
 * `buf` must hold `len` doubles.
 */
enum LnStatus ln_field_embeddings(const struct LnField *field, double *buf, size_t len);

/**
 * Exact norm of `Σ coords[i] θ^i`; `len` must equal the degree.
 *
 * # Safety
 * `coords` must hold `len` values; `out` must be writable.
 */
enum LnStatus ln_field_norm(const struct LnField *field,
                            const int64_t *coords,
                            size_t len,
                            int64_t *out);

/**
 * Enumerates the box of half-width `radius` and builds the count table with
 * estimates. Zero for `max_norm`, `zeta_cutoff` or `budget` selects the
 * default: no norm filter, a cutoff just covering the table, 10^8 nodes.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_count_table_new(const struct LnField *field,
                                 double radius,
                                 uint64_t max_norm,
                                 size_t zeta_cutoff,
                                 uint64_t budget,
                                 struct LnCountTable **out);

/**
 * # Safety
 * `table` must come from `ln_count_table_new`, or be null.
 */
void ln_count_table_free(struct LnCountTable *table);

/**
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_count_table_len(const struct LnCountTable *table, size_t *out);

/**
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_count_table_row(const struct LnCountTable *table,
                                 size_t index,
                                 struct LnCountRow *out);

/**
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_error_profile(const struct LnCountTable *table, struct LnErrorProfile *out);

/**
 * Fraction of rows with `f_k ≤ f`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_error_fraction_at_most(const struct LnCountTable *table, uint64_t f, double *out);

/**
 * `Σ n_k k^{-2} / Σ b_k k^{-2}`, the SNR-independent PEP ratio.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_pep_ratio(const struct LnCountTable *table, double *out);

/**
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LnStatus ln_eve_probability(const struct LnCountTable *table,
                                 double gamma_e,
                                 double vol_lambda_b,
                                 double *out);

/**
 * Status of the last failed call on this thread, `Ok` if the last call
 * succeeded.
 *
 * # Safety
 * `out` must be writable.
 */
enum LnStatus ln_last_error(struct LnErrorSummary *out);

/**
 * Copies the last error message, NUL-terminated and truncated to `len`
 * bytes. Returns the full message length.
 *
 * # Safety
 * `buf` must hold `len` bytes, or be null with `len` zero.
 */
size_t ln_last_error_message(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATNORM_H */
