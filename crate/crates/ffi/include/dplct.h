#ifndef DPLCT_H
#define DPLCT_H

/* Generated from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every call; the nonzero values match the command-line exit codes.
 */
typedef enum DplctStatus {
  DPLCT_STATUS_OK = 0,
  DPLCT_STATUS_MISMATCH = 1,
  DPLCT_STATUS_INVALID_INPUT = 2,
  DPLCT_STATUS_UNSUPPORTED = 3,
  DPLCT_STATUS_NULL_POINTER = 4,
  DPLCT_STATUS_PANIC = 5,
} DplctStatus;

/**
 * A loaded classification table.
 */
typedef struct DplctDataset DplctDataset;

/**
 * A weight quadruple with its degree.
 */
typedef struct DplctQuintuple DplctQuintuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *dplct_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void dplct_string_free(char *s);

/**
 * # Safety
 * `weights` must point to four readable `uint64_t`; `out` must be writable.
 */
enum DplctStatus dplct_quintuple_new(const uint64_t *weights,
                                     uint64_t degree,
                                     struct DplctQuintuple **out);

/**
 * # Safety
 * `q` must be null or a handle from [`dplct_quintuple_new`], not yet freed.
 */
void dplct_quintuple_free(struct DplctQuintuple *q);

/**
 * Sorted weights and degree.
 *
 * # Safety
 * `q` must be a live handle; `weights` must hold four `uint64_t`; `degree` writable.
 */
enum DplctStatus dplct_quintuple_get(const struct DplctQuintuple *q,
                                     uint64_t *weights,
                                     uint64_t *degree);

/**
 * `I = Σa_i − d`.
 *
 * # Safety
 * `q` must be a live handle; `out` writable.
 */
enum DplctStatus dplct_quintuple_fano_index(const struct DplctQuintuple *q, int64_t *out);

/**
 * `K²` as a reduced `"p/q"` string.
 *
 * # Safety
 * `q` must be a live handle; `out` writable.
 */
enum DplctStatus dplct_quintuple_k_squared(const struct DplctQuintuple *q, char **out);

/**
 * Whether the quintuple falls in the main case of the trichotomy.
 *
 * # Safety
 * `q` must be a live handle; `out` writable.
 */
enum DplctStatus dplct_quintuple_is_main_case(const struct DplctQuintuple *q, bool *out);

/**
 * Loads the table at `path`; with a null `path`, `$DPLCT_DATASET` or the
 * bundled table.
 *
 * # Safety
 * `path` must be null or NUL-terminated; `out` writable.
 */
enum DplctStatus dplct_dataset_open(const char *path, struct DplctDataset **out);

/**
 * # Safety
 * `ds` must be null or a handle from [`dplct_dataset_open`], not yet freed.
 */
void dplct_dataset_free(struct DplctDataset *ds);

/**
 * Recomputes the table with series over `n_min..=n_max`. Returns
 * `Mismatch` when any row disagrees.
 *
 * # Safety
 * `ds` must be a live handle; `rows` and `mismatched` writable.
 */
enum DplctStatus dplct_dataset_verify(const struct DplctDataset *ds,
                                      int64_t n_min,
                                      int64_t n_max,
                                      uintptr_t *rows,
                                      uintptr_t *mismatched);

/**
 * Global lct of the table's surface `q`, one JSON object per branch:
 * `[{"cond":{…},"lct":"p/q","ke":…,"exceptionality":…,"witness":…}]`.
 *
 * # Safety
 * `ds` and `q` must be live handles; `out` writable.
 */
enum DplctStatus dplct_dataset_lct(const struct DplctDataset *ds,
                                   const struct DplctQuintuple *q,
                                   char **out);

/**
 * lct of `Σ coeffs[k]·u^exps[2k]·v^exps[2k+1]` at the origin, as `"p/q"`.
 *
 * # Safety
 * `exps` must hold `2·len` readable `uint32_t`, `coeffs` `len` readable
 * `int64_t`; `out` writable.
 */
enum DplctStatus dplct_germ_lct(const uint32_t *exps,
                                const int64_t *coeffs,
                                uintptr_t len,
                                uintptr_t max_iter,
                                char **out);

/**
 * Main-case quintuples of index `index` with `a3 <= max_a3`, as a JSON
 * array of `[a0,a1,a2,a3,d]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DplctStatus dplct_enumerate(int64_t index, uint64_t max_a3, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPLCT_H */
