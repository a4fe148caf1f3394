#ifndef ARMKIN_H
#define ARMKIN_H

/* Generated by cbindgen from crates/armkin-ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArmkinPathClass {
  ARMKIN_PATH_CLASS_I = 1,
  ARMKIN_PATH_CLASS_II = 2,
  ARMKIN_PATH_CLASS_III = 3,
} ArmkinPathClass;

// Result code of every fallible call.
typedef enum ArmkinStatus {
  ARMKIN_STATUS_OK = 0,
  ARMKIN_STATUS_NULL_POINTER = 1,
  ARMKIN_STATUS_INVALID_ARM = 2,
  ARMKIN_STATUS_INVALID_ARGUMENT = 3,
  ARMKIN_STATUS_UNREACHABLE = 4,
  ARMKIN_STATUS_BUFFER_TOO_SMALL = 5,
  ARMKIN_STATUS_INTERNAL = 6,
} ArmkinStatus;

// Opaque arm handle.
typedef struct ArmkinArm ArmkinArm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an arm from `n` segment lengths, base first.
//
// # Safety
//
// `lengths` must point to `n` readable doubles and `out` must be a valid
// pointer to write the handle to. The handle must be released with
// [`armkin_arm_free`].
enum ArmkinStatus armkin_arm_new(const double *lengths, size_t n, struct ArmkinArm **out);

// Releases an arm. Null is ignored.
//
// # Safety
//
// `arm` must be null or a handle from [`armkin_arm_new`] that has not been
// freed yet.
void armkin_arm_free(struct ArmkinArm *arm);

// Number of segments, or 0 for a null handle.
//
// # Safety
//
// `arm` must be null or a live handle.
size_t armkin_arm_segments(const struct ArmkinArm *arm);

// Writes the reach interval `[lo, hi]`.
//
// # Safety
//
// `arm` must be a live handle; `lo` and `hi` must be writable.
enum ArmkinStatus armkin_arm_reach(const struct ArmkinArm *arm, double *lo, double *hi);

// Writes the path class of the arm.
//
// # Safety
//
// `arm` must be a live handle; `out` must be writable.
enum ArmkinStatus armkin_arm_path_class(const struct ArmkinArm *arm, enum ArmkinPathClass *out);

// Writes the number of components at base length `z`: 1 or 2, and 0 when
// `z` is outside the reach interval.
//
// # Safety
//
// `arm` must be a live handle; `components` must be writable.
enum ArmkinStatus armkin_arm_components(const struct ArmkinArm *arm,
                                        double z,
                                        uint32_t *components);

// Solves for the target `(qx, qy)`.
//
// Writes the number of configurations (1 or 2) to `count` and the angles,
// one configuration after the other, to `angles`. `capacity` is the number
// of doubles `angles` can hold; `2 * n` always suffices. When it is too
// small, `count` is still written and nothing else.
//
// # Safety
//
// `arm` must be a live handle, `angles` must be writable for `capacity`
// doubles and `count` must be writable.
enum ArmkinStatus armkin_arm_solve(const struct ArmkinArm *arm,
                                   double qx,
                                   double qy,
                                   double *angles,
                                   size_t capacity,
                                   size_t *count);

// Forward kinematics of `n` angles.
//
// # Safety
//
// `arm` must be a live handle, `angles` must point to `n` readable doubles,
// `x` and `y` must be writable.
enum ArmkinStatus armkin_arm_forward(const struct ArmkinArm *arm,
                                     const double *angles,
                                     size_t n,
                                     double *x,
                                     double *y);

// Static, NUL terminated description of a status code.
const char *armkin_status_message(int32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARMKIN_H */
