#ifndef ORBITLAW_H
#define ORBITLAW_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum {
  ORBITLAW_STATUS_OK = 0,
  ORBITLAW_STATUS_NULL_POINTER = 1,
  ORBITLAW_STATUS_INVALID_ARGUMENT = 2,
  ORBITLAW_STATUS_PARSE_ERROR = 3,
  ORBITLAW_STATUS_BUDGET_EXCEEDED = 4,
  ORBITLAW_STATUS_INTERNAL = 5,
} OrbitlawStatus;

/**
 * A length functional such as `i:a+b` or `flat`.
 */
typedef struct OrbitlawFunctional OrbitlawFunctional;

/**
 * A materialized orbit, in enumeration order.
 */
typedef struct OrbitlawOrbit OrbitlawOrbit;

/**
 * A tabulated ratio law.
 */
typedef struct OrbitlawRatioLaw OrbitlawRatioLaw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *orbitlaw_last_error(void);

/**
 * Library version as a static string.
 */
const char *orbitlaw_version(void);

/**
 * Geometric intersection number of the primitive classes `(p1,q1)` and `(p2,q2)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
OrbitlawStatus orbitlaw_intersection(int64_t p1, int64_t q1, int64_t p2, int64_t q2, uint64_t *out);

/**
 * Parses a functional spec into a new handle.
 *
 * # Safety
 * `spec` must be null or a nul-terminated string; `out` null or valid for writes.
 */
OrbitlawStatus orbitlaw_functional_parse(const char *spec, OrbitlawFunctional **out);

/**
 * # Safety
 * `f` must be null or a handle from [`orbitlaw_functional_parse`] not yet freed.
 */
void orbitlaw_functional_free(OrbitlawFunctional *f);

/**
 * Value of the functional at the integer vector `(p, q)`.
 *
 * # Safety
 * `f` must be a live handle or null; `out` null or valid for writes.
 */
OrbitlawStatus orbitlaw_functional_eval(const OrbitlawFunctional *f,
                                        int64_t p,
                                        int64_t q,
                                        double *out);

/**
 * Number of orbit elements of the standard pair with total length at most `cutoff`
 * (a rational such as `"5/2"`), counted without storing them.
 *
 * # Safety
 * Pointers must be null or valid as described for the other functions.
 */
OrbitlawStatus orbitlaw_orbit_count(const OrbitlawFunctional *f, const char *cutoff, uint64_t *out);

/**
 * Materializes the orbit of `basepoint` (null for the standard pair) below
 * `cutoff`, failing with `BudgetExceeded` when more than `budget` elements
 * would be stored.
 *
 * # Safety
 * Pointers must be null or valid as described for the other functions.
 */
OrbitlawStatus orbitlaw_orbit_enumerate(const OrbitlawFunctional *f,
                                        const char *cutoff,
                                        const char *basepoint,
                                        uint64_t budget,
                                        OrbitlawOrbit **out);

/**
 * # Safety
 * `o` must be a live handle or null; `out` null or valid for writes.
 */
OrbitlawStatus orbitlaw_orbit_len(const OrbitlawOrbit *o, size_t *out);

/**
 * Writes the curves of element `index` into `p` and `q` (capacity `cap`
 * each) and its component count into `k`. With `cap` too small only `k` is
 * written and `InvalidArgument` is returned.
 *
 * # Safety
 * `p` and `q` must be valid for `cap` writes; other pointers as usual.
 */
OrbitlawStatus orbitlaw_orbit_get(const OrbitlawOrbit *o,
                                  size_t index,
                                  int64_t *p,
                                  int64_t *q,
                                  size_t cap,
                                  size_t *k);

/**
 * # Safety
 * `o` must be null or a handle from [`orbitlaw_orbit_enumerate`] not yet freed.
 */
void orbitlaw_orbit_free(OrbitlawOrbit *o);

/**
 * Pants-decomposition density of the surface `(genus, boundary)` at the
 * simplex point `x[0..n]`.
 *
 * # Safety
 * `x` must be valid for `n` reads; `out` null or valid for writes.
 */
OrbitlawStatus orbitlaw_pants_density(uint32_t genus,
                                      uint32_t boundary,
                                      const double *x,
                                      size_t n,
                                      double *out);

/**
 * `∫ ∏ x_i` over the standard `n`-simplex.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
OrbitlawStatus orbitlaw_dirichlet_norm(uint32_t n, double *out);

/**
 * Lattice estimate of the volume of `{φ ≤ 1}` at scale `l`; the integer
 * point count is written to `count` when it is not null.
 *
 * # Safety
 * Pointers must be null or valid as described for the other functions.
 */
OrbitlawStatus orbitlaw_lattice_volume(const OrbitlawFunctional *f,
                                       uint64_t l,
                                       double *out,
                                       uint64_t *count);

/**
 * Tabulates the law of `ψ/φ`.
 *
 * # Safety
 * Pointers must be null or valid as described for the other functions.
 */
OrbitlawStatus orbitlaw_ratio_law_new(const OrbitlawFunctional *psi,
                                      const OrbitlawFunctional *phi,
                                      size_t resolution,
                                      OrbitlawRatioLaw **out);

/**
 * # Safety
 * `law` must be a live handle or null; `out` null or valid for writes.
 */
OrbitlawStatus orbitlaw_ratio_law_cdf(const OrbitlawRatioLaw *law, double t, double *out);

/**
 * # Safety
 * `law` must be a live handle or null; `lo` and `hi` null or valid for writes.
 */
OrbitlawStatus orbitlaw_ratio_law_support(const OrbitlawRatioLaw *law, double *lo, double *hi);

/**
 * # Safety
 * `law` must be null or a handle from [`orbitlaw_ratio_law_new`] not yet freed.
 */
void orbitlaw_ratio_law_free(OrbitlawRatioLaw *law);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITLAW_H */
