#ifndef BACKSTEP_H
#define BACKSTEP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_ARGUMENT = 2,
  BS_STATUS_DOMAIN = 3,
  BS_STATUS_RESONANCE = 4,
  BS_STATUS_NUMERICAL = 5,
  BS_STATUS_IO = 6,
  BS_STATUS_CONFIG = 7,
  BS_STATUS_BUFFER_TOO_SMALL = 8,
  BS_STATUS_PANIC = 9,
} BsStatus;

typedef enum BsKernelKind {
  BS_KERNEL_KIND_KA = 0,
  BS_KERNEL_KIND_LA = 1,
  BS_KERNEL_KIND_KB = 2,
  BS_KERNEL_KIND_LB = 3,
  BS_KERNEL_KIND_NUMERIC_LOWER = 4,
  BS_KERNEL_KIND_NUMERIC_UPPER = 5,
} BsKernelKind;

typedef enum BsSeriesColumn {
  BS_SERIES_COLUMN_TIME = 0,
  BS_SERIES_COLUMN_NORM_W = 1,
  BS_SERIES_COLUMN_NORM_V = 2,
  BS_SERIES_COLUMN_NORM_EW = 3,
  BS_SERIES_COLUMN_NORM_EV = 4,
  BS_SERIES_COLUMN_CONTROL = 5,
} BsSeriesColumn;

/**
 * Validated run configuration.
 */
typedef struct BsConfig BsConfig;

/**
 * Kernel samples on the grid triangle.
 */
typedef struct BsKernelTable BsKernelTable;

/**
 * Recorded trajectory.
 */
typedef struct BsSeries BsSeries;

typedef struct BsParams {
  double rho;
  double alpha;
  double beta;
  double gamma;
} BsParams;

typedef struct BsCondition {
  double lhs;
  double rhs;
  double margin;
  bool satisfied;
} BsCondition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Length in bytes of the last error message on this thread, without the NUL.
 */
size_t bs_last_error_length(void);

/**
 * Copies the last error message (NUL-terminated, truncated to fit) into
 * `buf` and returns the full message length.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t bs_last_error_message(char *buf, size_t len);

/**
 * Modified Bessel function `I_order(x)`, `order` in {0, 1, 2}.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_bessel_i(uint32_t order, double x, double *out);

/**
 * Bessel function `J_1(x)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_bessel_j1(double x, double *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_erf(double x, double *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_erfi(double x, double *out);

/**
 * Closed-form kernel value at `(x, y)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_kernel_value(enum BsKernelKind kind, double x, double y, double gain, double *out);

/**
 * Closed-form bounds on `||k^a||` and `||k^a_x(1, .)||`.
 *
 * # Safety
 * Out pointers must be null or valid for writes.
 */
enum BsStatus bs_kernel_norm_bounds(double gain, double *ka, double *kax1);

/**
 * Eigenvalue `n` of the uncontrolled system.
 *
 * # Safety
 * `p` must be null or point to a valid `BsParams`; `out` must be null or valid.
 */
enum BsStatus bs_eigenvalue(const struct BsParams *p, size_t n, double *out);

/**
 * Controller gain condition with closed-form norm bounds.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum BsStatus bs_check_controller(double c2, const struct BsParams *p, struct BsCondition *out);

/**
 * Two-measurement observer condition.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum BsStatus bs_check_observer2(double o2, const struct BsParams *p, struct BsCondition *out);

/**
 * Parses and validates a JSON run configuration.
 *
 * # Safety
 * `json` must be null or a NUL-terminated string; `out` null or valid.
 */
enum BsStatus bs_config_from_json(const char *json, struct BsConfig **out);

/**
 * Loads a JSON run configuration from a file.
 *
 * # Safety
 * `path` must be null or a NUL-terminated string; `out` null or valid.
 */
enum BsStatus bs_config_load(const char *path, struct BsConfig **out);

/**
 * # Safety
 * `cfg` must be null or a handle from `bs_config_*` not yet freed.
 */
void bs_config_free(struct BsConfig *cfg);

/**
 * Runs the configured scenario.
 *
 * # Safety
 * `cfg` must be null or a live config handle; `out` null or valid.
 */
enum BsStatus bs_simulate(const struct BsConfig *cfg, struct BsSeries **out);

/**
 * # Safety
 * `s` must be null or a live series handle.
 */
void bs_series_free(struct BsSeries *s);

/**
 * Number of stored records and grid nodes.
 *
 * # Safety
 * `s` must be null or a live series handle; out pointers null or valid.
 */
enum BsStatus bs_series_shape(const struct BsSeries *s, size_t *records, size_t *nodes);

/**
 * Copies one per-record column into `buf` (length at least the record
 * count). Observer and control columns fail with `InvalidArgument` when the
 * scenario has none.
 *
 * # Safety
 * `s` must be null or a live series handle; `buf` null or valid for `len` doubles.
 */
enum BsStatus bs_series_column(const struct BsSeries *s,
                               enum BsSeriesColumn column,
                               double *buf,
                               size_t len);

/**
 * Copies `w` and `v` of record `index` (each of length at least the node count).
 *
 * # Safety
 * `s` must be null or a live series handle; `w`, `v` null or valid for `len` doubles.
 */
enum BsStatus bs_series_state(const struct BsSeries *s,
                              size_t index,
                              double *w,
                              double *v,
                              size_t len);

/**
 * Builds a kernel table on a uniform grid with `n_intervals` intervals.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BsStatus bs_kernel_table_new(enum BsKernelKind kind,
                                  double gain,
                                  size_t n_intervals,
                                  struct BsKernelTable **out);

/**
 * Value at nodes `(i, j)`; fails outside the table's triangle.
 *
 * # Safety
 * `t` must be null or a live table handle; `out` null or valid.
 */
enum BsStatus bs_kernel_table_get(const struct BsKernelTable *t, size_t i, size_t j, double *out);

/**
 * Trapezoid `L2` norm over the triangle.
 *
 * # Safety
 * `t` must be null or a live table handle; `out` null or valid.
 */
enum BsStatus bs_kernel_table_l2_norm(const struct BsKernelTable *t, double *out);

/**
 * # Safety
 * `t` must be null or a live table handle.
 */
void bs_kernel_table_free(struct BsKernelTable *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BACKSTEP_H */
