// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use thiserror::Error;

/// Errors reported by the kinematics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArmError {
    #[error("an arm needs at least 2 segments, got {0}")]
    TooFewSegments(usize),
    #[error("segment {index} has invalid length {value}; lengths must be finite and positive")]
    InvalidLength { index: usize, value: f64 },
    #[error("length list is empty")]
    Empty,
    #[error("expected {expected} angles, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("end effector is off the positive x axis (x = {x}, y = {y})")]
    NotRestricted { x: f64, y: f64 },
    #[error("target coincides with the base")]
    TargetAtOrigin,
    #[error("non-finite input")]
    NonFinite,
    #[error("base length must be positive, got {0}")]
    NonPositiveBaseLength(f64),
    #[error("base length {z} is outside the reach interval [{lo}, {hi}]")]
    Unreachable { z: f64, lo: f64, hi: f64 },
    #[error("triangle side is not positive: ({a}, {b}, {c})")]
    DegenerateSide { a: f64, b: f64, c: f64 },
    #[error("sides ({a}, {b}, {c}) violate the triangle inequality")]
    TriangleInequality { a: f64, b: f64, c: f64 },
    #[error("{x} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("switch set must be non-empty and ascending")]
    InvalidSwitchSet,
    #[error("chain value x_{level} = {value} is not positive")]
    ChainCollapsed { level: usize, value: f64 },
    #[error("expected {expected} levels in the plan, got {found}")]
    PlanMismatch { expected: usize, found: usize },
    #[error("configuration base length {found} does not match {expected}")]
    BaseLengthMismatch { expected: f64, found: f64 },
    #[error("the oracle supports at most 5 segments, got {0}")]
    OracleTooLarge(usize),
    #[error("oracle resolution must be at least 16, got {0}")]
    ResolutionTooLow(usize),
    #[error("a continuity report needs at least 3 rows, got {0}")]
    TooFewRows(usize),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T, E = ArmError> = std::result::Result<T, E>;
