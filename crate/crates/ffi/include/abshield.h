#ifndef ABSHIELD_H
#define ABSHIELD_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum AbsStatus {
  ABS_STATUS_OK = 0,
  ABS_STATUS_NULL_POINTER = 1,
  ABS_STATUS_INVALID_ARGUMENT = 2,
  ABS_STATUS_CONFIG = 3,
  ABS_STATUS_SOLVER = 4,
  ABS_STATUS_VERIFY_FAILED = 5,
  ABS_STATUS_IO = 6,
  ABS_STATUS_PANIC = 7,
} AbsStatus;

/**
 * Opaque field profile.
 */
typedef struct AbsProfile AbsProfile;

/**
 * Opaque spectrum sweep.
 */
typedef struct AbsSweep AbsSweep;

/**
 * Radii of the region boundaries and the electron sheet.
 */
typedef struct AbsGeometry {
  double a;
  double b;
  double c;
  double d;
  double e;
  double r_e;
} AbsGeometry;

/**
 * Fields at one radius. `region` is 0..4 for core, gap, shell, outer,
 * exterior.
 */
typedef struct AbsFieldSample {
  double a;
  double b_z;
  double j_phi;
  uint32_t region;
} AbsFieldSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library and valid until the next call on this thread.
 */
const char *abs_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *abs_version(void);

/**
 * First `n` Dirichlet levels of order `nu` on `[d, e]`, written to `out`.
 */
enum AbsStatus abs_annulus_levels(double d, double e, double nu, size_t n, double *out);

enum AbsStatus abs_sweep_new(double d,
                             double e,
                             const double *flux,
                             size_t n_flux,
                             int64_t l_min,
                             int64_t l_max,
                             size_t n_max,
                             struct AbsSweep **out);

/**
 * Ground-state shift at grid index `i`.
 */
enum AbsStatus abs_sweep_ground_shift(const struct AbsSweep *sweep, size_t i, double *out);

/**
 * Reference energy `E_min(0)` of the sweep.
 */
enum AbsStatus abs_sweep_reference_energy(const struct AbsSweep *sweep, double *out);

void abs_sweep_free(struct AbsSweep *sweep);

/**
 * Field profile for the given sources, with the trapped flux at its
 * nearest quantized value. `approx` selects the exponential approximation.
 */
enum AbsStatus abs_profile_new(const struct AbsGeometry *geometry,
                               double beta,
                               double phi_a,
                               double b_e,
                               bool include_shield,
                               bool approx,
                               struct AbsProfile **out);

enum AbsStatus abs_profile_eval(const struct AbsProfile *profile,
                                double r,
                                struct AbsFieldSample *out);

/**
 * Flux through the disc of the given radius, in flux quanta.
 */
enum AbsStatus abs_profile_flux_within(const struct AbsProfile *profile,
                                       double radius,
                                       double *out);

void abs_profile_free(struct AbsProfile *profile);

/**
 * Runs a CLI command (`spectrum`, `fields`, ...) on a TOML scenario (null
 * for the built-in default) and returns the rendered tables, concatenated,
 * in `*out`. `format` is `"csv"` or `"json"`. Free the text with
 * [`abs_string_free`]. A failed `verify` still returns its table along
 * with `ABS_STATUS_VERIFY_FAILED`.
 */
enum AbsStatus abs_run_command(const char *command,
                               const char *config_toml,
                               const char *format,
                               char **out);

void abs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABSHIELD_H */
