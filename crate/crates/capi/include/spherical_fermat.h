/* C interface for the spherical-fermat library. */

#ifndef SPHERICAL_FERMAT_H
#define SPHERICAL_FERMAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SfStatus {
  SfStatus_Ok = 0,
  /**
   * a required pointer argument was NULL
   */
  SfStatus_NullArgument = 1,
  /**
   * malformed input (bad UTF-8, bad JSON, unknown name, bad signature)
   */
  SfStatus_InvalidInput = 2,
  /**
   * a domain error (ramified fiber, non-spherical signature, …)
   */
  SfStatus_DomainError = 3,
  /**
   * an evaluation budget or height cap was exceeded
   */
  SfStatus_BudgetExceeded = 4,
  /**
   * an internal invariant failed
   */
  SfStatus_InternalError = 5,
} SfStatus;

/**
 * Opaque handle to a validated map.
 */
typedef struct SfMap SfMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Looks a map up in the built-in catalog. Returns NULL for unknown names.
 */
struct SfMap *sf_map_by_name(const char *name);

/**
 * Validates a map given as a JSON record {"name", "sig", "phi0", "phiInf"}.
 */
enum SfStatus sf_map_from_json(const char *json, struct SfMap **out);

/**
 * Releases a map handle. NULL is allowed.
 */
void sf_map_free(struct SfMap *map);

/**
 * Releases a string returned by this library. NULL is allowed.
 */
void sf_string_free(char *s);

/**
 * deg φ; 0 for NULL.
 */
uint32_t sf_map_degree(const struct SfMap *map);

/**
 * Writes the signature (a, b, c).
 */
enum SfStatus sf_map_signature(const struct SfMap *map, uint32_t *a, uint32_t *b, uint32_t *c);

/**
 * Map name as a fresh string.
 */
enum SfStatus sf_map_name(const struct SfMap *map, char **out);

/**
 * |Res(φ₀, φ∞)| as a decimal string.
 */
enum SfStatus sf_map_resultant(const struct SfMap *map, char **out);

/**
 * Defect profile as JSON: {"resultant": "…", "defects": {"e": "num/den"}}.
 */
enum SfStatus sf_defects_json(const struct SfMap *map, char **out);

/**
 * vol(R_φ) by adaptive quadrature.
 */
enum SfStatus sf_volume(const struct SfMap *map, double tol, double *value, double *error_bound);

/**
 * #Aut(φ) by deterministic fiber sampling.
 */
enum SfStatus sf_aut(const struct SfMap *map, uintptr_t trials, uint64_t seed, uint32_t *out);

/**
 * Full constant report: vol, Σδₑe^(2/d), #Aut, δ(φ), κ(φ).
 */
enum SfStatus sf_constants(const struct SfMap *map,
                           double tol,
                           double *vol,
                           double *sum_term,
                           uint32_t *aut,
                           double *delta,
                           double *kappa);

/**
 * Image count up to a height: distinct points and the weighted count N(h).
 */
enum SfStatus sf_count_image(const struct SfMap *map,
                             uint64_t height,
                             uint64_t *n_points,
                             uint64_t *weighted);

/**
 * Ω_S(a,b,c) membership of a point "m/n". Writes 1 or 0.
 */
enum SfStatus sf_in_omega(const char *point,
                          uint32_t a,
                          uint32_t b,
                          uint32_t c,
                          const uint64_t *s_primes,
                          uintptr_t s_len,
                          int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHERICAL_FERMAT_H */
