#ifndef DIMERLAB_H
#define DIMERLAB_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_ARGUMENT = 2,
  DL_STATUS_DISCONNECTED = 3,
  DL_STATUS_TOO_LARGE = 4,
  /**
   * The exact result does not fit in 64 bits.
   */
  DL_STATUS_OVERFLOW = 5,
  DL_STATUS_NO_CONVERGENCE = 6,
  DL_STATUS_BUFFER_TOO_SMALL = 7,
  DL_STATUS_UNSUPPORTED = 8,
  DL_STATUS_PANIC = 9,
} DlStatus;

/**
 * Opaque multigraph handle.
 */
typedef struct DlGraph DlGraph;

/**
 * Opaque strip transfer-operator handle.
 */
typedef struct DlStrip DlStrip;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *dl_last_error_message(void);

/**
 * Build a graph on `n` vertices from `m` edges given as `2 * m` endpoint
 * indices. Loops and parallel edges are allowed.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (it may be null when
 * `m == 0`) and `out_graph` must be writable.
 */
enum DlStatus dl_graph_new(size_t n, const uint32_t *edges, size_t m, struct DlGraph **out_graph);

/**
 * # Safety
 * `g` must come from [`dl_graph_new`] and not have been freed. Null is ignored.
 */
void dl_graph_free(struct DlGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out_connected` writable.
 */
enum DlStatus dl_graph_is_connected(const struct DlGraph *g, bool *out_connected);

/**
 * T_G(1, 0) by the subset recursion.
 *
 * # Safety
 * `g` must be a live handle and `out_value` writable.
 */
enum DlStatus dl_tutte_10(const struct DlGraph *g, int64_t *out_value);

/**
 * Ursell coefficient by the subset recursion.
 *
 * # Safety
 * `g` must be a live handle and `out_value` writable.
 */
enum DlStatus dl_ursell(const struct DlGraph *g, int64_t *out_value);

/**
 * Ursell coefficient by edge-subset enumeration (at most 24 edges).
 *
 * # Safety
 * `g` must be a live handle and `out_value` writable.
 */
enum DlStatus dl_ursell_brute(const struct DlGraph *g, int64_t *out_value);

/**
 * Ursell coefficient as a NUL-terminated decimal string. `out_needed`
 * receives the required buffer size including the terminator; when `buf`
 * is too small nothing is written and `BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `g` must be a live handle, `buf` must hold `len` bytes (or be null with
 * `len == 0`) and `out_needed` must be writable.
 */
enum DlStatus dl_ursell_string(const struct DlGraph *g, char *buf, size_t len, size_t *out_needed);

/**
 * T_G(x, y) at rational `x = x_num / x_den`, `y = y_num / y_den`, returned
 * as a reduced fraction with positive denominator.
 *
 * # Safety
 * `g` must be a live handle and both outputs writable.
 */
enum DlStatus dl_tutte_eval(const struct DlGraph *g,
                            int64_t x_num,
                            int64_t x_den,
                            int64_t y_num,
                            int64_t y_den,
                            int64_t *out_num,
                            int64_t *out_den);

/**
 * Exact series coefficient a_k(d) as a reduced fraction.
 *
 * # Safety
 * Both outputs must be writable.
 */
enum DlStatus dl_coeff_a(size_t k, uint32_t d, int64_t *out_num, int64_t *out_den);

/**
 * Series value of lambda_d(p) truncated at `order`.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum DlStatus dl_eval_lambda(double p, uint32_t d, size_t order, double *out_value);

/**
 * Exact one-dimensional lambda_1(p).
 *
 * # Safety
 * `out_value` must be writable.
 */
enum DlStatus dl_d1_closed_form(double p, double *out_value);

/**
 * Close-packed series at p = 1.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum DlStatus dl_eval_dimer_series(uint32_t d, double *out_value);

/**
 * Strip of the given width at dimer activity `activity`.
 *
 * # Safety
 * `out_strip` must be writable.
 */
enum DlStatus dl_strip_new(size_t width,
                           bool periodic,
                           double activity,
                           struct DlStrip **out_strip);

/**
 * # Safety
 * `s` must come from [`dl_strip_new`] and not have been freed. Null is ignored.
 */
void dl_strip_free(struct DlStrip *s);

/**
 * Free energy per site, ln(eigenvalue) / width.
 *
 * # Safety
 * `s` must be a live handle and `out_value` writable.
 */
enum DlStatus dl_strip_free_energy(const struct DlStrip *s, double *out_value);

/**
 * Dimer density of covered sites.
 *
 * # Safety
 * `s` must be a live handle and `out_value` writable.
 */
enum DlStatus dl_strip_density(const struct DlStrip *s, double *out_value);

/**
 * Strip estimate of lambda_2(p) at a single width.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum DlStatus dl_strip_lambda(double p, size_t width, bool periodic, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIMERLAB_H */
