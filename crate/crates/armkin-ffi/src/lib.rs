// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! C interface to `armkin`.
//!
//! An arm is created with [`armkin_arm_new`] and released with
//! [`armkin_arm_free`]. Every other call returns an [`ArmkinStatus`] and
//! writes results through out-pointers. Angles are radians in (−π, π],
//! ordered like the lengths passed at creation.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use armkin::{
    classify_connectivity, design_pair, forward_kinematics, normalize_arm, ArmError, ArmSpec,
    Configuration, EndEffectorTarget, IkPlan, PathClass,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmkinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArm = 2,
    InvalidArgument = 3,
    Unreachable = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmkinPathClass {
    I = 1,
    Ii = 2,
    Iii = 3,
}

/// Opaque arm handle.
pub struct ArmkinArm {
    spec: ArmSpec,
    plan: IkPlan,
}

fn status_of(e: &ArmError) -> ArmkinStatus {
    match e {
        ArmError::Unreachable { .. } => ArmkinStatus::Unreachable,
        ArmError::TooFewSegments(_) | ArmError::InvalidLength { .. } | ArmError::Empty => {
            ArmkinStatus::InvalidArm
        }
        ArmError::ChainCollapsed { .. }
        | ArmError::PlanMismatch { .. }
        | ArmError::InvalidSwitchSet
        | ArmError::NotRestricted { .. } => ArmkinStatus::Internal,
        _ => ArmkinStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> ArmkinStatus) -> ArmkinStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(ArmkinStatus::Internal)
}

/// Creates an arm from `n` segment lengths, base first.
///
/// # Safety
///
/// `lengths` must point to `n` readable doubles and `out` must be a valid
/// pointer to write the handle to. The handle must be released with
/// [`armkin_arm_free`].
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_new(
    lengths: *const f64,
    n: usize,
    out: *mut *mut ArmkinArm,
) -> ArmkinStatus {
    if lengths.is_null() || out.is_null() {
        return ArmkinStatus::NullPointer;
    }
    let lengths = slice::from_raw_parts(lengths, n).to_vec();
    guard(|| match ArmSpec::new(lengths) {
        Ok(spec) => {
            let plan = design_pair(&normalize_arm(&spec));
            *out = Box::into_raw(Box::new(ArmkinArm { spec, plan }));
            ArmkinStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases an arm. Null is ignored.
///
/// # Safety
///
/// `arm` must be null or a handle from [`armkin_arm_new`] that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_free(arm: *mut ArmkinArm) {
    if !arm.is_null() {
        drop(Box::from_raw(arm));
    }
}

/// Number of segments, or 0 for a null handle.
///
/// # Safety
///
/// `arm` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_segments(arm: *const ArmkinArm) -> usize {
    arm.as_ref().map_or(0, |a| a.spec.n())
}

/// Writes the reach interval `[lo, hi]`.
///
/// # Safety
///
/// `arm` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_reach(
    arm: *const ArmkinArm,
    lo: *mut f64,
    hi: *mut f64,
) -> ArmkinStatus {
    let Some(arm) = arm.as_ref() else {
        return ArmkinStatus::NullPointer;
    };
    if lo.is_null() || hi.is_null() {
        return ArmkinStatus::NullPointer;
    }
    let r = arm.plan.reach();
    *lo = r.lo;
    *hi = r.hi;
    ArmkinStatus::Ok
}

/// Writes the path class of the arm.
///
/// # Safety
///
/// `arm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_path_class(
    arm: *const ArmkinArm,
    out: *mut ArmkinPathClass,
) -> ArmkinStatus {
    let Some(arm) = arm.as_ref() else {
        return ArmkinStatus::NullPointer;
    };
    if out.is_null() {
        return ArmkinStatus::NullPointer;
    }
    *out = match arm.plan.class() {
        PathClass::I => ArmkinPathClass::I,
        PathClass::II => ArmkinPathClass::Ii,
        PathClass::III => ArmkinPathClass::Iii,
    };
    ArmkinStatus::Ok
}

/// Writes the number of components at base length `z`: 1 or 2, and 0 when
/// `z` is outside the reach interval.
///
/// # Safety
///
/// `arm` must be a live handle; `components` must be writable.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_components(
    arm: *const ArmkinArm,
    z: f64,
    components: *mut u32,
) -> ArmkinStatus {
    let Some(arm) = arm.as_ref() else {
        return ArmkinStatus::NullPointer;
    };
    if components.is_null() {
        return ArmkinStatus::NullPointer;
    }
    guard(|| match classify_connectivity(arm.plan.arm(), z) {
        Ok(c) => {
            *components = c.components() as u32;
            ArmkinStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Solves for the target `(qx, qy)`.
///
/// Writes the number of configurations (1 or 2) to `count` and the angles,
/// one configuration after the other, to `angles`. `capacity` is the number
/// of doubles `angles` can hold; `2 * n` always suffices. When it is too
/// small, `count` is still written and nothing else.
///
/// # Safety
///
/// `arm` must be a live handle, `angles` must be writable for `capacity`
/// doubles and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_solve(
    arm: *const ArmkinArm,
    qx: f64,
    qy: f64,
    angles: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> ArmkinStatus {
    let Some(arm) = arm.as_ref() else {
        return ArmkinStatus::NullPointer;
    };
    if angles.is_null() || count.is_null() {
        return ArmkinStatus::NullPointer;
    }
    guard(|| {
        let solution = match EndEffectorTarget::new(qx, qy)
            .and_then(|t| armkin::design::solve_with(&arm.plan, t))
        {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        let cfgs = &solution.configurations;
        *count = cfgs.len();
        let n = arm.spec.n();
        if capacity < cfgs.len() * n {
            return ArmkinStatus::BufferTooSmall;
        }
        let dst = slice::from_raw_parts_mut(angles, cfgs.len() * n);
        for (chunk, c) in dst.chunks_mut(n).zip(cfgs) {
            chunk.copy_from_slice(c.angles());
        }
        ArmkinStatus::Ok
    })
}

/// Forward kinematics of `n` angles.
///
/// # Safety
///
/// `arm` must be a live handle, `angles` must point to `n` readable doubles,
/// `x` and `y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn armkin_arm_forward(
    arm: *const ArmkinArm,
    angles: *const f64,
    n: usize,
    x: *mut f64,
    y: *mut f64,
) -> ArmkinStatus {
    let Some(arm) = arm.as_ref() else {
        return ArmkinStatus::NullPointer;
    };
    if angles.is_null() || x.is_null() || y.is_null() {
        return ArmkinStatus::NullPointer;
    }
    let angles = slice::from_raw_parts(angles, n).to_vec();
    guard(
        || match Configuration::new(angles).and_then(|c| forward_kinematics(&arm.spec, &c)) {
            Ok(p) => {
                *x = p.x;
                *y = p.y;
                ArmkinStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Static, NUL terminated description of a status code.
#[no_mangle]
pub extern "C" fn armkin_status_message(status: i32) -> *const c_char {
    let msg: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"invalid segment lengths\0",
        3 => b"invalid argument\0",
        4 => b"target outside the reach interval\0",
        5 => b"output buffer too small\0",
        6 => b"internal error\0",
        _ => b"unknown status\0",
    };
    msg.as_ptr().cast()
}
