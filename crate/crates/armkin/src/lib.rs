// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Planar arm kinematics with a fixed end effector.
//!
//! For a target at distance `z` from the base, the configurations reaching
//! it form one or two connected components. This crate decides which, and
//! provides a pair of continuous inverse kinematics that returns one
//! configuration per component.
//!
//! ```
//! use armkin::{solve, ArmSpec, EndEffectorTarget};
//!
//! let arm = ArmSpec::new(vec![2.0, 2.0, 1.0]).unwrap();
//! let s = solve(&arm, EndEffectorTarget::new(0.5, 0.0).unwrap()).unwrap();
//! assert_eq!(s.configurations.len(), 2);
//! ```

pub mod arm;
pub mod design;
pub mod engine;
pub mod error;
pub mod format;
pub mod reach;
pub mod service;
pub mod topology;
pub mod verify;

/// Relative tolerance for equalities between lengths, scaled by the total
/// arm length (plus `z` where a base length is involved).
pub const EPS_REL: f64 = 1e-9;

pub use arm::{
    base_length, canonical_angle, forward_kinematics, lift_rotation, normalize_arm,
    permute_configuration, ArmSpec, Configuration, EndEffectorTarget, Permutation, Point2,
    SortedArm,
};
pub use design::{design_pair, solve, solve_restricted, sweep, IkPlan, Member, Solution, SweepRow};
pub use engine::{eval_ikcf, evaluate_ik, interval_sign, triangle_angles, Sign};
pub use error::{ArmError, Result};
pub use reach::{reach_closed, reach_recursive, ReachInterval};
pub use topology::{
    classify_connectivity, path_class, state_block, transition_values, vital_critical_values,
    Block, BlockState, Connectivity, PathClass, Transition,
};
pub use verify::{brute_force_components, component_certificate, continuity_report, Verdict};
