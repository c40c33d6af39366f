/* C interface to the eicp library. */

#ifndef EICP_H
#define EICP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes returned by every fallible function.
 */
typedef enum EicpStatus {
  EICP_STATUS_OK = 0,
  EICP_STATUS_NULL_POINTER = 1,
  EICP_STATUS_INVALID_ARGUMENT = 2,
  EICP_STATUS_PARSE = 3,
  EICP_STATUS_HYPOTHESIS = 4,
  EICP_STATUS_DIMENSION_TOO_LARGE = 5,
  EICP_STATUS_PARAM_OUT_OF_RANGE = 6,
  EICP_STATUS_NOT_POSITIVE_DEFINITE = 7,
  EICP_STATUS_NUMERICAL = 8,
  EICP_STATUS_OUT_OF_RANGE = 9,
  EICP_STATUS_PANIC = 10,
} EicpStatus;

/**
 * A normalized union of closed intervals.
 */
typedef struct EicpIntervalUnion EicpIntervalUnion;

/**
 * A certified matrix pair `(A, B)`.
 */
typedef struct EicpPair EicpPair;

/**
 * Enumerated complementarity spectrum.
 */
typedef struct EicpSpectrum EicpSpectrum;

/**
 * Matrix class certificates of a pair.
 */
typedef struct EicpCertificates {
  bool a_sdd;
  bool a_pd;
  bool a_copositive;
  bool b_sdd;
  bool b_pd;
} EicpCertificates;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len`). Returns the full message length in bytes
 * excluding the terminator. Passing a null `buf` only queries the length.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t eicp_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *eicp_version(void);

/**
 * Builds a pair from row-major `n × n` arrays. `b` may be null for the
 * identity.
 *
 * # Safety
 * `a` (and `b` when non-null) must point to `n * n` doubles; `out` must be
 * valid for writes.
 */
enum EicpStatus eicp_pair_new(size_t n, const double *a, const double *b, struct EicpPair **out);

/**
 * Builds a pair from an instance document (`{"n": .., "A": .., "B": ..}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EicpStatus eicp_pair_from_json(const char *json, struct EicpPair **out);

/**
 * # Safety
 * `pair` must be null or a handle from this library not yet freed.
 */
void eicp_pair_free(struct EicpPair *pair);

/**
 * Dimension of the pair, or 0 for a null handle.
 *
 * # Safety
 * `pair` must be null or a live handle.
 */
size_t eicp_pair_dim(const struct EicpPair *pair);

/**
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_pair_certificates(const struct EicpPair *pair, struct EicpCertificates *out);

/**
 * Smallest shift `μ ≥ 0` that makes `A + μB` positive definite, plus a
 * small margin.
 *
 * # Safety
 * `pair` must be a live handle; `mu` must be valid for writes.
 */
enum EicpStatus eicp_suggest_shift(const struct EicpPair *pair, double *mu);

/**
 * New pair `(A + μB, B)`.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_pair_shift(const struct EicpPair *pair, double mu, struct EicpPair **out);

/**
 * One-row set `K1`.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_k1_set(const struct EicpPair *pair, struct EicpIntervalUnion **out);

/**
 * One-row set `K1'` for copositive `A`.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_k1_cop_set(const struct EicpPair *pair, struct EicpIntervalUnion **out);

/**
 * Two-row set `K2` for copositive `A`.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_k2_set(const struct EicpPair *pair, struct EicpIntervalUnion **out);

/**
 * # Safety
 * `u` must be null or a live handle.
 */
void eicp_union_free(struct EicpIntervalUnion *u);

/**
 * Number of disjoint intervals, or 0 for a null handle.
 *
 * # Safety
 * `u` must be null or a live handle.
 */
size_t eicp_union_len(const struct EicpIntervalUnion *u);

/**
 * # Safety
 * `u` must be a live handle; `lo`, `hi` must be valid for writes.
 */
enum EicpStatus eicp_union_get(const struct EicpIntervalUnion *u,
                               size_t index,
                               double *lo,
                               double *hi);

/**
 * Whether `x` lies in the union within `tol`. False for a null handle.
 *
 * # Safety
 * `u` must be null or a live handle.
 */
bool eicp_union_contains(const struct EicpIntervalUnion *u, double x, double tol);

/**
 * Closed-form hull of `K1`.
 *
 * # Safety
 * `pair` must be a live handle; `lo`, `hi` must be valid for writes.
 */
enum EicpStatus eicp_hull_k1(const struct EicpPair *pair, double *lo, double *hi);

/**
 * Closed-form hull of `K2`.
 *
 * # Safety
 * `pair` must be a live handle; `lo`, `hi` must be valid for writes.
 */
enum EicpStatus eicp_hull_k2(const struct EicpPair *pair, double *lo, double *hi);

/**
 * Smallest and largest generalized eigenvalue of `(A, B)`.
 *
 * # Safety
 * `pair` must be a live handle; `lo`, `hi` must be valid for writes.
 */
enum EicpStatus eicp_gamma(const struct EicpPair *pair, double *lo, double *hi);

/**
 * Smallest root of `P_low_S` and largest root of `P_up_S` for the
 * zero-based row set `rows[0..len]`. For `len ≥ 3` the result is not a
 * localization bound.
 *
 * # Safety
 * `pair` must be a live handle; `rows` must point to `len` indices; `lo`,
 * `hi` must be valid for writes.
 */
enum EicpStatus eicp_multi_row_roots(const struct EicpPair *pair,
                                     const size_t *rows,
                                     size_t len,
                                     double *lo,
                                     double *hi);

/**
 * Enumerates the complementarity spectrum. `n_max == 0` and
 * `feas_tol <= 0` select the defaults.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be valid for writes.
 */
enum EicpStatus eicp_spectrum_enumerate(const struct EicpPair *pair,
                                        size_t n_max,
                                        double feas_tol,
                                        struct EicpSpectrum **out);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
void eicp_spectrum_free(struct EicpSpectrum *s);

/**
 * Number of accepted eigenpairs (one per support), or 0 for null.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t eicp_spectrum_len(const struct EicpSpectrum *s);

/**
 * Copies the distinct eigenvalues (ascending) into `values[0..cap]` and
 * returns how many there are.
 *
 * # Safety
 * `s` must be null or a live handle; `values` must be null or valid for
 * `cap` writes.
 */
size_t eicp_spectrum_values(const struct EicpSpectrum *s, double *values, size_t cap);

/**
 * Eigenpair `index`: writes `λ` and, when `x` is non-null, the `n`
 * components of the normalized eigenvector.
 *
 * # Safety
 * `s` must be a live handle; `lambda` must be valid for writes; `x` must be
 * null or valid for `n` writes where `n` is the pair dimension.
 */
enum EicpStatus eicp_spectrum_get(const struct EicpSpectrum *s,
                                  size_t index,
                                  double *lambda,
                                  double *x);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EICP_H */
