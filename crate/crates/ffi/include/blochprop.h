#ifndef BLOCHPROP_H
#define BLOCHPROP_H

#include <stddef.h>
#include <stdint.h>

typedef enum BpMode {
  BP_MODE_MAX = 0,
  BP_MODE_MIN = 1,
} BpMode;

typedef enum BpPipeline {
  BP_PIPELINE_SU2 = 0,
  BP_PIPELINE_EULER = 1,
  BP_PIPELINE_CLOSED = 2,
} BpPipeline;

typedef enum BpStatus {
  BP_STATUS_OK = 0,
  BP_STATUS_NULL_POINTER = 1,
  BP_STATUS_INVALID_ARGUMENT = 2,
  BP_STATUS_NORM_VIOLATION = 3,
  BP_STATUS_NOT_HERMITIAN = 4,
  BP_STATUS_ZERO_VECTOR = 5,
  BP_STATUS_DEGENERATE_ROTATION = 6,
  BP_STATUS_NON_FINITE = 7,
  BP_STATUS_OUTSIDE_GENERATOR_FAMILY = 8,
  BP_STATUS_PERIOD_NOT_FOUND = 9,
  BP_STATUS_OUT_OF_RANGE = 10,
  BP_STATUS_PANIC = 11,
} BpStatus;

typedef enum BpTarget {
  BP_TARGET_AZIMUTH = 0,
  BP_TARGET_ELEVATION = 1,
} BpTarget;

// Opaque sampled discrepancy series.
typedef struct BpSeries BpSeries;

// Euler angles `(phi, theta, psi)`; also used for error angles
// `(eps_x, eps_y, eps_z)`.
typedef struct BpEuler {
  double phi;
  double theta;
  double psi;
} BpEuler;

// Row-major 3x3 matrix.
typedef struct BpMat3 {
  double m[9];
} BpMat3;

typedef struct BpVec3 {
  double x;
  double y;
  double z;
} BpVec3;

typedef struct BpSample {
  double t;
  double delta_az;
  double delta_el;
} BpSample;

typedef struct BpExtremum {
  double value;
  double eps_x;
  double eps_y;
  double eps_z;
  double t;
} BpExtremum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the
// same thread.
const char *bp_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *bp_version(void);

// Euler matrix `S(phi, theta, psi)` acting on row vectors.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_euler_matrix(struct BpEuler angles, struct BpMat3 *out);

// `v . S(angles)`.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_rotate_euler(struct BpVec3 v, struct BpEuler angles, struct BpVec3 *out);

// Limit rotation `S_P(t)` at the given rates, acting on column vectors.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_sp_general(double t, struct BpEuler angles, struct BpMat3 *out);

// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_period(struct BpEuler angles, double *out);

// Discrepancies at time `t` between `base` and its perturbed copy.
//
// # Safety
// `out_az` and `out_el` must be null or valid for writes.
enum BpStatus bp_delta_closed_form(struct BpVec3 base,
                                   struct BpEuler err,
                                   double t,
                                   struct BpEuler angles,
                                   double *out_az,
                                   double *out_el);

// Steps `v` and `v . S(err)` `steps` times; the series has `steps + 1`
// samples.
//
// # Safety
// `out` must be null or valid for writes. The handle written there must be
// released with [`bp_series_free`].
enum BpStatus bp_simulate(enum BpPipeline pipeline,
                          struct BpVec3 v,
                          struct BpEuler err,
                          struct BpEuler step,
                          size_t steps,
                          struct BpSeries **out);

// Number of samples; 0 for a null handle.
//
// # Safety
// `series` must be null or a live handle.
size_t bp_series_len(const struct BpSeries *series);

// # Safety
// `series` must be null or a live handle; `out` null or valid for writes.
enum BpStatus bp_series_sample(const struct BpSeries *series, size_t index, struct BpSample *out);

// Releases a handle from [`bp_simulate`]; null is ignored.
//
// # Safety
// `series` must be null or a live handle not used afterwards.
void bp_series_free(struct BpSeries *series);

// Multi-start search over error angles and time in `[0, 2 pi)^4`.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_find_extremum(enum BpTarget target,
                               enum BpMode mode,
                               struct BpVec3 base,
                               struct BpEuler angles,
                               size_t num_starts,
                               uint64_t seed,
                               struct BpExtremum *out);

// Mean discrepancy over one period.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_time_averaged_error(enum BpTarget target,
                                     struct BpVec3 base,
                                     struct BpEuler err,
                                     struct BpEuler angles,
                                     double *out);

// Numeric period of the discrepancy signal.
//
// # Safety
// `out` must be null or valid for writes.
enum BpStatus bp_estimate_period(enum BpTarget target,
                                 struct BpVec3 base,
                                 struct BpEuler err,
                                 struct BpEuler angles,
                                 double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCHPROP_H */
