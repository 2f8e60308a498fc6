#ifndef MZ_H
#define MZ_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MzEngine {
  MZ_ENGINE_MOBIUS = 0,
  MZ_ENGINE_BOOLEAN = 1,
  MZ_ENGINE_DELETE_CONTRACT = 2,
  MZ_ENGINE_COCIRCUIT = 3,
} MzEngine;

typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  MZ_STATUS_NULL_POINTER = 1,
  MZ_STATUS_INVALID_ARGUMENT = 2,
  MZ_STATUS_PARSE = 3,
  MZ_STATUS_IO = 4,
  MZ_STATUS_TOO_LARGE = 5,
  /**
   * The operation needs a linear, simple, loopless or non-zero-rank input.
   */
  MZ_STATUS_UNSUPPORTED = 6,
  MZ_STATUS_PANIC = 7,
} MzStatus;

/**
 * Opaque tree-decomposition handle.
 */
typedef struct MzDecomposition MzDecomposition;

/**
 * Opaque matroid handle.
 */
typedef struct MzMatroid MzMatroid;

/**
 * Opaque integer polynomial handle.
 */
typedef struct MzPoly MzPoly;

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *mz_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void mz_string_free(char *s);

/**
 * Matroid of the columns of a `rows × cols` matrix over GF(q), given row-major
 * as field indices.
 *
 * # Safety
 * `entries` must point to `rows * cols` bytes; `out` must be writable.
 */
enum MzStatus mz_matroid_from_matrix(uint32_t q,
                                     size_t rows,
                                     size_t cols,
                                     const uint8_t *entries,
                                     struct MzMatroid **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MzStatus mz_matroid_uniform(size_t rank, size_t n, struct MzMatroid **out);

/**
 * Reads a matrix or graph file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum MzStatus mz_matroid_from_file(const char *path, struct MzMatroid **out);

/**
 * # Safety
 * `m` must be null or a handle from this library and not yet freed.
 */
void mz_matroid_free(struct MzMatroid *m);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t mz_matroid_size(const struct MzMatroid *m);

/**
 * Rank of the elements in `mask` (bit `e` for element `e`).
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_matroid_rank(const struct MzMatroid *m, uint32_t mask, size_t *out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_has_line_minor(const struct MzMatroid *m, size_t l, bool *out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_charpoly(const struct MzMatroid *m, enum MzEngine engine, struct MzPoly **out);

/**
 * # Safety
 * `p` must be null or a handle from this library and not yet freed.
 */
void mz_poly_free(struct MzPoly *p);

/**
 * Degree, or -1 for the zero polynomial or a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
ptrdiff_t mz_poly_degree(const struct MzPoly *p);

/**
 * JSON array of decimal coefficient strings, constant term first. Free with
 * [`mz_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_poly_to_json(const struct MzPoly *p, char **out);

/**
 * Whether `p(λ) > 0` for every `λ > num/den`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_poly_positive_beyond(const struct MzPoly *p, int64_t num, int64_t den, bool *out);

/**
 * Reads a decomposition file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum MzStatus mz_decomposition_from_file(const char *path, struct MzDecomposition **out);

/**
 * Best decomposition among the built-in heuristics.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_decomposition_heuristic(const struct MzMatroid *m, struct MzDecomposition **out);

/**
 * An optimal decomposition by exhaustive search (at most 7 elements).
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_decomposition_exact(const struct MzMatroid *m, struct MzDecomposition **out);

/**
 * # Safety
 * `d` must be null or a handle from this library and not yet freed.
 */
void mz_decomposition_free(struct MzDecomposition *d);

/**
 * Number of tree vertices, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t mz_decomposition_vertex_count(const struct MzDecomposition *d);

/**
 * Width of `d` as a decomposition of `m`.
 *
 * # Safety
 * `m` and `d` must be live handles; `out` must be writable.
 */
enum MzStatus mz_width(const struct MzMatroid *m, const struct MzDecomposition *d, size_t *out);

#endif  /* MZ_H */
