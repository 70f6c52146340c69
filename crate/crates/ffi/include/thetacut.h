#ifndef THETACUT_H
#define THETACUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_INVALID_ARGUMENT = 1,
  TC_STATUS_BUDGET_EXCEEDED = 2,
  TC_STATUS_PARSE_ERROR = 3,
  TC_STATUS_IO_ERROR = 4,
  TC_STATUS_UNKNOWN_NAME = 5,
  TC_STATUS_NULL_POINTER = 6,
  TC_STATUS_PANIC = 7,
} TcStatus;

typedef enum TcSide {
  TC_SIDE_CYCLES = 0,
  TC_SIDE_COCYCLES = 1,
} TcSide;

typedef enum TcSense {
  TC_SENSE_MAXIMIZE = 0,
  TC_SENSE_MINIMIZE = 1,
} TcSense;

typedef enum TcSolveStatus {
  TC_SOLVE_STATUS_OPTIMAL = 0,
  TC_SOLVE_STATUS_MAX_ITERATIONS = 1,
  TC_SOLVE_STATUS_INFEASIBLE_DETECTED = 2,
} TcSolveStatus;

typedef enum TcVerdict {
  TC_VERDICT_EXACT = 0,
  TC_VERDICT_NOT_EXACT = 1,
  TC_VERDICT_INCONCLUSIVE = 2,
} TcVerdict;

typedef struct TcGraph TcGraph;

typedef struct TcMatroid TcMatroid;

typedef struct TcTemplate TcTemplate;

/**
 * Result of a relaxation solve. `bound` is certified; `value` is attained by a feasible point.
 */
typedef struct TcBoundResult {
  double bound;
  double value;
  enum TcSolveStatus status;
  uint64_t iterations;
  /**
   * Side of the solved moment matrix; 0 when nothing was left to solve.
   */
  size_t side;
} TcBoundResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next `tc_*` call on the same thread.
 */
const char *tc_last_error_message(void);

const char *tc_version(void);

/**
 * # Safety
 * `edges` holds `2 * num_edges` vertex indices; `out` is writable.
 */
enum TcStatus tc_graph_new(size_t num_vertices,
                           const size_t *edges,
                           size_t num_edges,
                           struct TcGraph **out);

/**
 * # Safety
 * `name` is a NUL-terminated string; `out` is writable.
 */
enum TcStatus tc_graph_zoo(const char *name, struct TcGraph **out);

/**
 * Parses the edge-list text format (`n m`, then `u v [w]` per edge).
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum TcStatus tc_graph_parse(const char *text, struct TcGraph **out);

/**
 * # Safety
 * `g` is null or a handle from this library not yet freed.
 */
void tc_graph_free(struct TcGraph *g);

/**
 * # Safety
 * `g` is null or a live handle. Returns 0 for null.
 */
size_t tc_graph_num_vertices(const struct TcGraph *g);

/**
 * # Safety
 * `g` is null or a live handle. Returns 0 for null.
 */
size_t tc_graph_num_edges(const struct TcGraph *g);

/**
 * A zoo name; graph names give their cographic matroid.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is writable.
 */
enum TcStatus tc_matroid_zoo(const char *name, struct TcMatroid **out);

/**
 * `rows` is a row-major `num_rows × num_elements` 0/1 matrix spanning the given side.
 *
 * # Safety
 * `rows` holds `num_rows * num_elements` bytes; `out` is writable.
 */
enum TcStatus tc_matroid_from_rows(size_t num_elements,
                                   const uint8_t *rows,
                                   size_t num_rows,
                                   enum TcSide rows_side,
                                   struct TcMatroid **out);

/**
 * Parses the matrix text format (`r m`, then `r` rows of 0/1).
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum TcStatus tc_matroid_parse(const char *text, enum TcSide rows_side, struct TcMatroid **out);

/**
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum TcStatus tc_matroid_graphic(const struct TcGraph *g, struct TcMatroid **out);

/**
 * Cycles of the cographic matroid are the cuts of `g`.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum TcStatus tc_matroid_cographic(const struct TcGraph *g, struct TcMatroid **out);

/**
 * # Safety
 * `m` is a live matroid handle; `out` is writable.
 */
enum TcStatus tc_matroid_dual(const struct TcMatroid *m, struct TcMatroid **out);

/**
 * # Safety
 * `m` is null or a handle from this library not yet freed.
 */
void tc_matroid_free(struct TcMatroid *m);

/**
 * # Safety
 * `m` is null or a live handle. Returns 0 for null.
 */
size_t tc_matroid_num_elements(const struct TcMatroid *m);

/**
 * Dimension of the cycle space.
 *
 * # Safety
 * `m` is null or a live handle. Returns 0 for null.
 */
size_t tc_matroid_cycle_rank(const struct TcMatroid *m);

/**
 * # Safety
 * `m` is null or a live handle. Returns 0 for null.
 */
size_t tc_matroid_cocycle_rank(const struct TcMatroid *m);

/**
 * Optimizes `constant + Σ c_e x_e` over level `k` of the cycle ideal.
 * `eps <= 0` selects the default tolerance.
 *
 * # Safety
 * `m` is live; `c` holds `len` doubles; `out` is writable.
 */
enum TcStatus tc_theta_bound(const struct TcMatroid *m,
                             const double *c,
                             size_t len,
                             double constant,
                             size_t k,
                             enum TcSense sense,
                             double eps,
                             struct TcBoundResult *out);

/**
 * Maximum weight cut over level `k`.
 *
 * # Safety
 * `g` is live; `w` holds `len` doubles; `out` is writable.
 */
enum TcStatus tc_maxcut_bound(const struct TcGraph *g,
                              const double *w,
                              size_t len,
                              size_t k,
                              double eps,
                              struct TcBoundResult *out);

/**
 * Goemans-Williamson bound.
 *
 * # Safety
 * `g` is live; `w` holds `len` doubles; `out` is writable.
 */
enum TcStatus tc_gw_bound(const struct TcGraph *g,
                          const double *w,
                          size_t len,
                          double eps,
                          struct TcBoundResult *out);

/**
 * Exact maximum cut weight by enumeration.
 *
 * # Safety
 * `g` is live; `w` holds `len` doubles; `out` is writable.
 */
enum TcStatus tc_brute_force_maxcut(const struct TcGraph *g,
                                    const double *w,
                                    size_t len,
                                    double *out);

/**
 * Level-one exactness of the cut ideal of `g`.
 *
 * # Safety
 * `g` is live; `out` is writable.
 */
enum TcStatus tc_th1_exact_graph(const struct TcGraph *g, enum TcVerdict *out);

/**
 * Level-one exactness of the cycle ideal of `m`.
 *
 * # Safety
 * `m` is live; `out` is writable.
 */
enum TcStatus tc_th1_exact_matroid(const struct TcMatroid *m, enum TcVerdict *out);

/**
 * Moment template at level `k`. Fails on matroids with coloops or coparallel pairs.
 *
 * # Safety
 * `m` is live; `out` is writable.
 */
enum TcStatus tc_template_build(const struct TcMatroid *m, size_t k, struct TcTemplate **out);

/**
 * # Safety
 * `t` is null or a handle from this library not yet freed.
 */
void tc_template_free(struct TcTemplate *t);

/**
 * # Safety
 * `t` is null or a live handle. Returns 0 for null.
 */
size_t tc_template_side(const struct TcTemplate *t);

/**
 * # Safety
 * `t` is null or a live handle. Returns 0 for null.
 */
size_t tc_template_nvars(const struct TcTemplate *t);

/**
 * Variable index of entry `(i, j)`.
 *
 * # Safety
 * `t` is live; `out` is writable.
 */
enum TcStatus tc_template_var(const struct TcTemplate *t, size_t i, size_t j, size_t *out);

/**
 * Degree-one variable of element `e`; fails at level 0.
 *
 * # Safety
 * `t` is live; `out` is writable.
 */
enum TcStatus tc_template_element_var(const struct TcTemplate *t, size_t e, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETACUT_H */
