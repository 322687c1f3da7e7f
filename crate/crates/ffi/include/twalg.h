#ifndef TWALG_H
#define TWALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TwStatus {
  TW_STATUS_OK = 0,
  TW_STATUS_NULL_POINTER = 1,
  TW_STATUS_DOMAIN = 2,
  TW_STATUS_SHAPE = 3,
  TW_STATUS_PRECONDITION = 4,
  TW_STATUS_RESOURCE = 5,
  TW_STATUS_INTEGRITY = 6,
  TW_STATUS_PARSE = 7,
  TW_STATUS_OUT_OF_RANGE = 8,
  TW_STATUS_PANIC = 9,
} TwStatus;

/**
 * A decomposition of the standard module.
 */
typedef struct TwDecomposition TwDecomposition;

/**
 * The sl3 operators for one `d`.
 */
typedef struct TwOperators TwOperators;

/**
 * One isotypic block: highest weight vector type, weight, dimension and
 * multiplicity.
 */
typedef struct TwBlock {
  uintptr_t r;
  uintptr_t s;
  uintptr_t t;
  int64_t m1;
  int64_t m2;
  uint64_t dim;
  uintptr_t mult;
} TwBlock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `tw_*` call on this thread.
 */
const char *tw_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tw_version(void);

/**
 * Builds the operators for `d`. Honors `TWALG_CAP`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TwStatus tw_operators_new(uintptr_t d, struct TwOperators **out);

/**
 * Releases operators; null is ignored.
 *
 * # Safety
 * `ops` must be null or a pointer from [`tw_operators_new`] not yet freed.
 */
void tw_operators_free(struct TwOperators *ops);

/**
 * Number of vertices, `3^d`.
 *
 * # Safety
 * `ops` must be a live handle; `out` valid for a write.
 */
enum TwStatus tw_operators_size(const struct TwOperators *ops, uintptr_t *out);

/**
 * Runs the operator identity suite; reports how many identities were
 * checked and how many hold exactly.
 *
 * # Safety
 * `ops` must be a live handle; both outputs valid for writes.
 */
enum TwStatus tw_relations_check(const struct TwOperators *ops,
                                 uintptr_t *out_total,
                                 uintptr_t *out_passed);

/**
 * Decomposes the standard module.
 *
 * # Safety
 * `ops` must be a live handle; `out` valid for a pointer write.
 */
enum TwStatus tw_decompose(const struct TwOperators *ops, struct TwDecomposition **out);

/**
 * Releases a decomposition; null is ignored.
 *
 * # Safety
 * `dec` must be null or a pointer from [`tw_decompose`] not yet freed.
 */
void tw_decomposition_free(struct TwDecomposition *dec);

/**
 * # Safety
 * `dec` must be a live handle; `out` valid for a write.
 */
enum TwStatus tw_decomposition_block_count(const struct TwDecomposition *dec, uintptr_t *out);

/**
 * Block `index`, in ascending `(t, m2)` order.
 *
 * # Safety
 * `dec` must be a live handle; `out` valid for a write.
 */
enum TwStatus tw_decomposition_block(const struct TwDecomposition *dec,
                                     uintptr_t index,
                                     struct TwBlock *out);

/**
 * `sum dim * mult`, always `3^d`.
 *
 * # Safety
 * `dec` must be a live handle; `out` valid for a write.
 */
enum TwStatus tw_decomposition_total(const struct TwDecomposition *dec, uint64_t *out);

/**
 * Algebra dimension by closure. Honors `TWALG_CAP`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum TwStatus tw_terwilliger_dim(uintptr_t d, uintptr_t *out);

/**
 * Sum of squared Wedderburn block sizes.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum TwStatus tw_wedderburn_total(uintptr_t d, uint64_t *out);

/**
 * Number of vertices of type `(d-s-t, s, t)`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum TwStatus tw_shell_size(uintptr_t d, uintptr_t s, uintptr_t t, uint64_t *out);

/**
 * Dimension of the irreducible module of highest weight `(m1, m2)`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum TwStatus tw_dim_formula(int64_t m1, int64_t m2, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWALG_H */
