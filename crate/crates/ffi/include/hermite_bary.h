#ifndef HERMITE_BARY_H
#define HERMITE_BARY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HB_GAUSS_JACOBI 0

#define HB_GAUSS_LOBATTO 1

#define HB_SCALING_SIMPLIFIED 0

#define HB_SCALING_FULL 1

#define HB_ALGORITHM_ONE 1

#define HB_ALGORITHM_TWO 2

/**
 * Result of every fallible call.
 */
typedef enum {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * buffer length does not match the object
   */
  HB_STATUS_SHAPE = 3,
  HB_STATUS_NO_CONVERGENCE = 4,
  /**
   * a value left double-precision range
   */
  HB_STATUS_RANGE = 5,
  /**
   * numerical contract violated during evaluation
   */
  HB_STATUS_CONTRACT = 6,
  /**
   * internal panic, caught at the boundary
   */
  HB_STATUS_PANIC = 7,
} HbStatus;

/**
 * Nodes and quadrature weights of a point system.
 */
typedef struct HbGrid HbGrid;

/**
 * Second-form interpolant ready for evaluation.
 */
typedef struct HbInterpolant HbInterpolant;

/**
 * Barycentric weight table, `n` rows of `m` entries.
 */
typedef struct HbWeights HbWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *hb_last_error_message(void);

/**
 * Builds a grid of `n` nodes. `kind` is `HB_GAUSS_JACOBI` or
 * `HB_GAUSS_LOBATTO`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
HbStatus hb_grid_new(int32_t kind, double alpha, double beta, size_t n, HbGrid **out);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t hb_grid_len(const HbGrid *grid);

/**
 * Copies the ascending nodes into `out[0..len]`; `len` must equal the node
 * count.
 *
 * # Safety
 * `grid` must be a live handle and `out` valid for `len` doubles.
 */
HbStatus hb_grid_nodes(const HbGrid *grid, double *out, size_t len);

/**
 * Copies the quadrature weights. For Lobatto grids the endpoint entries are
 * the fused endpoint weights used by the barycentric formula.
 *
 * # Safety
 * `grid` must be a live handle and `out` valid for `len` doubles.
 */
HbStatus hb_grid_quadrature_weights(const HbGrid *grid, double *out, size_t len);

/**
 * # Safety
 * `grid` must be null or a handle from [`hb_grid_new`] not freed before.
 */
void hb_grid_free(HbGrid *grid);

/**
 * Weight table with `m` values per node.
 *
 * # Safety
 * `grid` must be a live handle and `out` valid for writing a pointer.
 */
HbStatus hb_weights_new(const HbGrid *grid,
                        size_t m,
                        int32_t scaling,
                        int32_t algorithm,
                        HbWeights **out);

/**
 * Values per node, or 0 for a null handle.
 *
 * # Safety
 * `weights` must be null or a live handle.
 */
size_t hb_weights_m(const HbWeights *weights);

/**
 * Copies a simplified table, row-major `n × m`. Fails with
 * `InvalidArgument` for a full table.
 *
 * # Safety
 * `weights` must be a live handle and `out` valid for `len` doubles.
 */
HbStatus hb_weights_simplified(const HbWeights *weights, double *out, size_t len);

/**
 * Any table as sign (`-1`, `0`, `1`) and `log10 |w|`, row-major `n × m`.
 *
 * # Safety
 * `weights` must be a live handle; `signs` and `log10_mags` must be valid
 * for `len` elements each.
 */
HbStatus hb_weights_scaled(const HbWeights *weights, int8_t *signs, double *log10_mags, size_t len);

/**
 * # Safety
 * `weights` must be null or a handle from [`hb_weights_new`] not freed
 * before.
 */
void hb_weights_free(HbWeights *weights);

/**
 * Interpolant of row-major data `data[k*m + j] = f^(j)(x_k)`. Needs a
 * simplified table built on the same grid.
 *
 * # Safety
 * `grid` and `weights` must be live handles; `data` valid for `len`
 * doubles; `out` valid for writing a pointer.
 */
HbStatus hb_interpolant_new(const HbGrid *grid,
                            const HbWeights *weights,
                            const double *data,
                            size_t len,
                            HbInterpolant **out);

/**
 * Evaluates at `xs[0..len]` into `out[0..len]`.
 *
 * # Safety
 * `interp` must be a live handle; `xs` and `out` valid for `len` doubles.
 */
HbStatus hb_interpolant_eval(const HbInterpolant *interp,
                             const double *xs,
                             double *out,
                             size_t len);

/**
 * # Safety
 * `interp` must be null or a handle from [`hb_interpolant_new`] not freed
 * before.
 */
void hb_interpolant_free(HbInterpolant *interp);

/**
 * Common factor of the Gauss–Jacobi weights at `n` nodes raised to `m`, as
 * sign and decimal log.
 *
 * # Safety
 * `sign` and `log10_mag` must be valid for writing.
 */
HbStatus hb_common_factor(double alpha,
                          double beta,
                          size_t n,
                          size_t m,
                          int8_t *sign,
                          double *log10_mag);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMITE_BARY_H */
