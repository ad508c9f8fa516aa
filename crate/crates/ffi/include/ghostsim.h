#ifndef GHOSTSIM_H
#define GHOSTSIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GhostsimDetector {
  GHOSTSIM_DETECTOR_INTEGRATING = 0,
  GHOSTSIM_DETECTOR_POINT = 1,
} GhostsimDetector;

typedef enum GhostsimMethod {
  /**
   * Parseval for integrating detectors, Fresnel for point detectors.
   */
  GHOSTSIM_METHOD_DEFAULT = 0,
  GHOSTSIM_METHOD_PARSEVAL = 1,
  GHOSTSIM_METHOD_DIRECT = 2,
  GHOSTSIM_METHOD_FRESNEL = 3,
  GHOSTSIM_METHOD_FRAUNHOFER = 4,
} GhostsimMethod;

typedef enum GhostsimPlane {
  GHOSTSIM_PLANE_GHOST = 0,
  GHOSTSIM_PLANE_DIFFRACTION = 1,
} GhostsimPlane;

typedef enum GhostsimStatus {
  GHOSTSIM_STATUS_OK = 0,
  GHOSTSIM_STATUS_NULL_POINTER = 1,
  /**
   * Unknown name, malformed text or an option the model does not take.
   */
  GHOSTSIM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The scenario violates a physical or geometric invariant.
   */
  GHOSTSIM_STATUS_INVARIANT = 3,
  /**
   * Sampling, quadrature or FWHM failure.
   */
  GHOSTSIM_STATUS_NUMERICS = 4,
  /**
   * Caller buffer shorter than the profile.
   */
  GHOSTSIM_STATUS_BUFFER_TOO_SMALL = 5,
  GHOSTSIM_STATUS_PANIC = 6,
} GhostsimStatus;

/**
 * Opaque peak-normalized counting-rate profile.
 */
typedef struct GhostsimProfile GhostsimProfile;

/**
 * Opaque experiment description.
 */
typedef struct GhostsimScenario GhostsimScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next ghostsim call on the same thread.
 */
const char *ghostsim_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ghostsim_version(void);

/**
 * New scenario from a built-in name such as "fig3_noslit".
 */
enum GhostsimStatus ghostsim_scenario_from_preset(const char *name, struct GhostsimScenario **out);

/**
 * New scenario from `key = value` text naming every field once.
 */
enum GhostsimStatus ghostsim_scenario_from_kv(const char *kv_text, struct GhostsimScenario **out);

/**
 * Applies one `key=value` override with the same rules as the command
 * line. The scenario is unchanged when the result would be invalid.
 */
enum GhostsimStatus ghostsim_scenario_set(struct GhostsimScenario *s,
                                          const char *key,
                                          const char *value);

/**
 * Reads one field in SI units. An absent signal slit reads as NaN.
 */
enum GhostsimStatus ghostsim_scenario_get(const struct GhostsimScenario *s,
                                          const char *key,
                                          double *out);

/**
 * Releases a scenario; null is a no-op.
 */
void ghostsim_scenario_free(struct GhostsimScenario *s);

/**
 * Computes a profile on [-half_width, half_width] with `n_points` samples.
 * `n_points == 0` or `half_width <= 0` selects the plane's default.
 */
enum GhostsimStatus ghostsim_profile_compute(const struct GhostsimScenario *s,
                                             enum GhostsimPlane plane,
                                             enum GhostsimDetector detector,
                                             enum GhostsimMethod method,
                                             size_t n_points,
                                             double half_width,
                                             struct GhostsimProfile **out);

/**
 * Number of samples; 0 for a null handle.
 */
size_t ghostsim_profile_len(const struct GhostsimProfile *p);

/**
 * FWHM in meters.
 */
enum GhostsimStatus ghostsim_profile_fwhm(const struct GhostsimProfile *p, double *out);

/**
 * Copies the sample positions (meters) into `buf`.
 */
enum GhostsimStatus ghostsim_profile_copy_x(const struct GhostsimProfile *p,
                                            double *buf,
                                            size_t len);

/**
 * Copies the peak-normalized intensities into `buf`.
 */
enum GhostsimStatus ghostsim_profile_copy_values(const struct GhostsimProfile *p,
                                                 double *buf,
                                                 size_t len);

/**
 * Releases a profile; null is a no-op.
 */
void ghostsim_profile_free(struct GhostsimProfile *p);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GHOSTSIM_H */
