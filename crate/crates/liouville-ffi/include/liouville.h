#ifndef LIOUVILLE_H
#define LIOUVILLE_H

/* Generated by cbindgen from liouville-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum LiouvilleStatus {
  LIOUVILLE_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  LIOUVILLE_STATUS_NULL_ARGUMENT = 1,
  /**
   * Parameters outside their domain (γ ∉ (0,2), μ ≤ 0, bad grid …).
   */
  LIOUVILLE_STATUS_INVALID_PARAMETER = 2,
  /**
   * Pole or condition violation (DOZZ pole, Seiberg bounds, |z| ≥ 1 …).
   */
  LIOUVILLE_STATUS_CONDITION = 3,
  /**
   * Unexpected internal failure (a panic was caught).
   */
  LIOUVILLE_STATUS_INTERNAL = 4,
} LiouvilleStatus;

/**
 * Opaque coupling data (γ, μ) with the derived Q and c_L.
 */
typedef struct LiouvilleCoupling LiouvilleCoupling;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a coupling handle; returns null when γ ∉ (0, 2) or μ ≤ 0.
 * The handle must be released with `liouville_coupling_free`.
 */
struct LiouvilleCoupling *liouville_coupling_new(double gamma, double mu);

/**
 * Releases a coupling handle; null is ignored.
 */
void liouville_coupling_free(struct LiouvilleCoupling *handle);

/**
 * Background charge Q = 2/γ + γ/2.
 */
double liouville_coupling_q(const struct LiouvilleCoupling *handle);

/**
 * Central charge c_L = 1 + 6Q².
 */
double liouville_coupling_central_charge(const struct LiouvilleCoupling *handle);

/**
 * Conformal weight Δ_α = (α/2)(Q − α/2).
 */
enum LiouvilleStatus liouville_delta(const struct LiouvilleCoupling *handle,
                                     double alpha_re,
                                     double alpha_im,
                                     double *out_re,
                                     double *out_im);

/**
 * Zamolodchikov's Υ_{γ/2}(z). Zero-lattice hits return an exact 0 with
 * `*out_on_zero_lattice = true` (the pointer may be null if not needed).
 */
enum LiouvilleStatus liouville_upsilon(const struct LiouvilleCoupling *handle,
                                       double z_re,
                                       double z_im,
                                       double *out_re,
                                       double *out_im,
                                       bool *out_on_zero_lattice);

/**
 * DOZZ structure constant C^DOZZ_{γ,μ}(α₁, α₂, α₃). Returns
 * `Condition` at the poles (denominator Υ zeros).
 */
enum LiouvilleStatus liouville_dozz(const struct LiouvilleCoupling *handle,
                                    double a1_re,
                                    double a1_im,
                                    double a2_re,
                                    double a2_im,
                                    double a3_re,
                                    double a3_im,
                                    double *out_re,
                                    double *out_im);

/**
 * Conformal-block coefficients β_0..β_n for external labels
 * `alphas[0..4]` (real) and intermediate weight Δ_{Q+iP}. `out` must hold
 * n+1 doubles; coefficients are real for real weights.
 */
enum LiouvilleStatus liouville_block_coefficients(const struct LiouvilleCoupling *handle,
                                                  double p_spectrum,
                                                  const double *alphas,
                                                  uint32_t n,
                                                  double *out);

/**
 * Bootstrap four-point function at complex z (0 < |z| < 1) for real
 * `alphas[0..4]` satisfying the channel conditions. Writes the value and
 * the reported error estimate.
 */
enum LiouvilleStatus liouville_fourpoint(const struct LiouvilleCoupling *handle,
                                         double z_re,
                                         double z_im,
                                         const double *alphas,
                                         double p_max,
                                         uintptr_t panels,
                                         uintptr_t nodes_per_panel,
                                         uint32_t n_trunc,
                                         double *out_value,
                                         double *out_error);

/**
 * Library version as a static C string.
 */
const char *liouville_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIOUVILLE_H */
