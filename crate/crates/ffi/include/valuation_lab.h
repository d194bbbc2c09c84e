#ifndef VALUATION_LAB_H
#define VALUATION_LAB_H

/* Generated by cbindgen from the valuation-lab-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  VL_STATUS_INVALID_ARGUMENT = 2,
  // The points do not span the ambient space.
  VL_STATUS_DEGENERATE = 3,
  // Dimension or tensor rank outside the supported range.
  VL_STATUS_UNSUPPORTED = 4,
  // The output buffer has the wrong length.
  VL_STATUS_BUFFER_SIZE = 5,
  VL_STATUS_NUMERICAL = 6,
  // A Rust panic was caught at the boundary.
  VL_STATUS_INTERNAL = 7,
} VlStatus;

// Opaque convex polytope.
typedef struct VlBody VlBody;

// Summary of a quadrature check of the vector Cauchy formula.
typedef struct VlCheckResult {
  bool pass;
  double max_abs_diff;
  double max_rel_diff;
  double max_std_error;
  double tolerance;
} VlCheckResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL after a success.
// The pointer stays valid until the next call on this thread.
const char *vl_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *vl_version(void);

// Volume `kappa_k` of the `k`-dimensional unit ball.
double vl_kappa(size_t k);

// Number of independent coefficients of a symmetric `rank`-tensor on `R^dim`.
//
// # Safety
// `out` must be NULL or point to writable memory for one `size_t`.
enum VlStatus vl_tensor_len(size_t dim, size_t rank, size_t *out);

// Convex hull of `count` points of dimension `dim`, stored row by row in `coords`.
//
// # Safety
// `coords` must point to `count * dim` doubles and `out` to writable storage
// for one handle pointer. The handle must be released with [`vl_body_free`].
enum VlStatus vl_body_from_vertices(const double *coords,
                                    size_t count,
                                    size_t dim,
                                    struct VlBody **out);

// Releases a body. NULL is ignored.
//
// # Safety
// `body` must be NULL or a handle from [`vl_body_from_vertices`] not yet freed.
void vl_body_free(struct VlBody *body);

// # Safety
// `body` must be a live handle and `out` writable.
enum VlStatus vl_body_dim(const struct VlBody *body, size_t *out);

// Number of vertices of the hull.
//
// # Safety
// `body` must be a live handle and `out` writable.
enum VlStatus vl_body_vertex_count(const struct VlBody *body, size_t *out);

// Hull vertices row by row; `len` must equal `vertex_count * dim`.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_body_vertices(const struct VlBody *body, double *out, size_t len);

// # Safety
// `body` must be a live handle and `out` writable.
enum VlStatus vl_body_volume(const struct VlBody *body, double *out);

// # Safety
// `body` must be a live handle and `out` writable.
enum VlStatus vl_body_surface_area(const struct VlBody *body, double *out);

// Moment vector `∫_K x dx`; `len` must equal the dimension.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_body_moment(const struct VlBody *body, double *out, size_t len);

// Boundary moment vector `q_1`; `len` must equal the dimension.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_q1(const struct VlBody *body, double *out, size_t len);

// `Upsilon_rank`, packed; `len` must equal `vl_tensor_len(dim, rank)`.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_upsilon(const struct VlBody *body, size_t rank, double *out, size_t len);

// `Xi_rank`, packed; `len` must equal `vl_tensor_len(dim, rank)`.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_xi(const struct VlBody *body, size_t rank, double *out, size_t len);

// Volume tensor `Psi_rank` for `rank <= 2`, packed.
//
// # Safety
// `body` must be a live handle and `out` must hold `len` doubles.
enum VlStatus vl_psi(const struct VlBody *body, size_t rank, double *out, size_t len);

// Volume of the orthogonal projection onto `u^perp` for a unit vector `u`.
//
// # Safety
// `body` must be a live handle, `u` must point to `u_len` doubles and `out` be writable.
enum VlStatus vl_projected_volume(const struct VlBody *body,
                                  const double *u,
                                  size_t u_len,
                                  double *out);

// Monte Carlo check (`samples` antithetic directions, `seed`) of the vector
// Cauchy formula relating mean shadow moments to `q_1` and `Upsilon_1`.
//
// # Safety
// `body` must be a live handle and `out` writable.
enum VlStatus vl_check_vector_cauchy(const struct VlBody *body,
                                     size_t samples,
                                     uint64_t seed,
                                     struct VlCheckResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VALUATION_LAB_H */
