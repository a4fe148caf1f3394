// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Arm description, configurations and forward kinematics.
//!
//! Lengths are stored base-first: index 0 is the segment attached to the
//! base, the last index is the segment carrying the end effector.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ArmError, Result};
use crate::EPS_REL;

/// Maps an angle onto the canonical range (−π, π].
pub fn canonical_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two angles on the circle, in [0, π].
pub fn angle_distance(a: f64, b: f64) -> f64 {
    canonical_angle(a - b).abs()
}

/// Segment lengths in user order, base first.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmSpec {
    lengths: Vec<f64>,
}

impl ArmSpec {
    pub fn new(lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() < 2 {
            return Err(ArmError::TooFewSegments(lengths.len()));
        }
        if let Some((index, &value)) = lengths
            .iter()
            .enumerate()
            .find(|(_, l)| !(l.is_finite() && **l > 0.0))
        {
            return Err(ArmError::InvalidLength { index, value });
        }
        Ok(Self { lengths })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// Sum of all segment lengths.
    pub fn total(&self) -> f64 {
        self.lengths.iter().sum()
    }
}

impl FromStr for ArmSpec {
    type Err = String;

    /// Parses a comma separated list such as `2,2,1`.
    fn from_str(s: &str) -> Result<Self, String> {
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("invalid length '{}'", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ArmSpec::new(lengths).map_err(|e| e.to_string())
    }
}

impl fmt::Display for ArmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A bijection on `0..n`. Entry `i` holds the original index of sorted
/// segment `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in &map {
            if j >= n || seen[j] {
                return Err(ArmError::InvalidPermutation(n));
            }
            seen[j] = true;
        }
        Ok(Self(map))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }
}

/// Absolute segment orientations, one per segment, each in (−π, π].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Configuration {
    angles: Vec<f64>,
}

impl Configuration {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(ArmError::NonFinite);
        }
        Ok(Self::from_raw(angles))
    }

    pub(crate) fn from_raw(mut angles: Vec<f64>) -> Self {
        for a in &mut angles {
            *a = canonical_angle(*a);
        }
        Self { angles }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Largest per-joint distance on the circle.
    pub fn max_angle_diff(&self, other: &Configuration) -> f64 {
        self.angles
            .iter()
            .zip(&other.angles)
            .map(|(a, b)| angle_distance(*a, *b))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Canonical descending arm together with the permutation back to user
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedArm {
    sorted: ArmSpec,
    perm: Permutation,
    original: ArmSpec,
}

impl SortedArm {
    pub fn from_lengths(lengths: &[f64]) -> Result<Self> {
        Ok(normalize_arm(&ArmSpec::new(lengths.to_vec())?))
    }

    /// Descending lengths, base first.
    pub fn lengths(&self) -> &[f64] {
        self.sorted.lengths()
    }

    pub fn as_spec(&self) -> &ArmSpec {
        &self.sorted
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn original(&self) -> &ArmSpec {
        &self.original
    }

    pub fn n(&self) -> usize {
        self.sorted.n()
    }

    pub fn total(&self) -> f64 {
        self.sorted.total()
    }

    /// Length of segment `p` counted from the end effector (0 is the
    /// outermost segment, `n - 1` the base).
    pub fn outer(&self, p: usize) -> f64 {
        let l = self.sorted.lengths();
        l[l.len() - 1 - p]
    }

    /// Lengths ordered outermost first.
    pub fn outer_first(&self) -> Vec<f64> {
        self.sorted.lengths().iter().rev().copied().collect()
    }
}

/// Sorts an arm by descending length. Ties keep their user order.
pub fn normalize_arm(spec: &ArmSpec) -> SortedArm {
    let l = spec.lengths();
    let mut idx: Vec<usize> = (0..l.len()).collect();
    idx.sort_by(|&a, &b| l[b].total_cmp(&l[a]));
    let sorted = ArmSpec {
        lengths: idx.iter().map(|&i| l[i]).collect(),
    };
    SortedArm {
        sorted,
        perm: Permutation(idx),
        original: spec.clone(),
    }
}

pub fn forward_kinematics(spec: &ArmSpec, cfg: &Configuration) -> Result<Point2> {
    if spec.n() != cfg.len() {
        return Err(ArmError::LengthMismatch {
            expected: spec.n(),
            found: cfg.len(),
        });
    }
    let (mut x, mut y) = (0.0, 0.0);
    for (l, t) in spec.lengths().iter().zip(cfg.angles()) {
        x += l * t.cos();
        y += l * t.sin();
    }
    Ok(Point2 { x, y })
}

/// Distance from the base to the end effector.
pub fn base_length(spec: &ArmSpec, cfg: &Configuration) -> Result<f64> {
    let p = forward_kinematics(spec, cfg)?;
    Ok(p.x.hypot(p.y))
}

/// Moves sorted-frame angles into user order: output slot `σ(i)` receives
/// input angle `i`.
pub fn permute_configuration(cfg: &Configuration, sigma: &Permutation) -> Result<Configuration> {
    if cfg.len() != sigma.len() {
        return Err(ArmError::LengthMismatch {
            expected: sigma.len(),
            found: cfg.len(),
        });
    }
    let mut out = vec![0.0; cfg.len()];
    for (i, &j) in sigma.as_slice().iter().enumerate() {
        out[j] = cfg.angles[i];
    }
    Ok(Configuration { angles: out })
}

/// Rotates a configuration whose end effector lies on the positive x axis.
pub fn lift_rotation(spec: &ArmSpec, cfg: &Configuration, rho: f64) -> Result<Configuration> {
    if !rho.is_finite() {
        return Err(ArmError::NonFinite);
    }
    let p = forward_kinematics(spec, cfg)?;
    let tol = EPS_REL * spec.total();
    if p.y.abs() > tol || p.x < -tol {
        return Err(ArmError::NotRestricted { x: p.x, y: p.y });
    }
    Ok(Configuration::from_raw(
        cfg.angles.iter().map(|a| a + rho).collect(),
    ))
}

/// End-effector target in workspace coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndEffectorTarget {
    qx: f64,
    qy: f64,
}

impl EndEffectorTarget {
    pub fn new(qx: f64, qy: f64) -> Result<Self> {
        if !(qx.is_finite() && qy.is_finite()) {
            return Err(ArmError::NonFinite);
        }
        if qx == 0.0 && qy == 0.0 {
            return Err(ArmError::TargetAtOrigin);
        }
        Ok(Self { qx, qy })
    }

    pub fn qx(&self) -> f64 {
        self.qx
    }

    pub fn qy(&self) -> f64 {
        self.qy
    }

    /// Base length `|q|`.
    pub fn z(&self) -> f64 {
        self.qx.hypot(self.qy)
    }

    /// Direction of the target seen from the base.
    pub fn rho(&self) -> f64 {
        self.qy.atan2(self.qx)
    }
}
