// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Connectivity of the space of configurations with a fixed base length.
//!
//! Close the arm into a polygon by adding the chord of length `z` from the
//! end effector back to the base. With the `n + 1` sides sorted as
//! `s[0] >= s[1] >= ...`, the space has two components exactly when
//! `s[0] + s[3] + s[4] + ... < s[1] + s[2]` and one otherwise.
//!
//! State blocks split the reachable `z` range at the base segment `l_{n-1}`
//! and at the third largest segment `l_{n-3}`; the inequality above takes a
//! simpler form inside each piece.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::arm::SortedArm;
use crate::error::{ArmError, Result};
use crate::reach::{reach_closed, ReachInterval};
use crate::EPS_REL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Connectivity {
    One,
    Two,
    Critical,
    Infeasible,
}

impl Connectivity {
    /// Number of configurations a paired solve reports.
    pub fn components(self) -> usize {
        match self {
            Connectivity::One | Connectivity::Critical => 1,
            Connectivity::Two => 2,
            Connectivity::Infeasible => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    #[serde(rename = "GT_TOP")]
    GtTop,
    #[serde(rename = "LT_TOP")]
    LtTop,
    #[serde(rename = "GT_MID")]
    GtMid,
    #[serde(rename = "LT_MID")]
    LtMid,
    #[serde(rename = "GT_BOT")]
    GtBot,
    #[serde(rename = "LT_BOT")]
    LtBot,
}

impl Block {
    pub fn label(self) -> &'static str {
        match self {
            Block::GtTop => "GT_TOP",
            Block::LtTop => "LT_TOP",
            Block::GtMid => "GT_MID",
            Block::LtMid => "LT_MID",
            Block::GtBot => "GT_BOT",
            Block::LtBot => "LT_BOT",
        }
    }

    /// `true` for the blocks where the space has two components.
    pub fn is_lt(self) -> bool {
        matches!(self, Block::LtTop | Block::LtMid | Block::LtBot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Transition {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Transition {
    pub const ALL: [Transition; 7] = [
        Transition::A,
        Transition::B,
        Transition::C,
        Transition::D,
        Transition::E,
        Transition::F,
        Transition::G,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Transition::A => "A",
            Transition::B => "B",
            Transition::C => "C",
            Transition::D => "D",
            Transition::E => "E",
            Transition::F => "F",
            Transition::G => "G",
        }
    }
}

/// Either an open state block or the transition marker at its boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockState {
    Block(Block),
    Transition(Transition),
}

impl BlockState {
    pub fn label(self) -> &'static str {
        match self {
            BlockState::Block(b) => b.label(),
            BlockState::Transition(t) => t.label(),
        }
    }
}

impl fmt::Display for BlockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for BlockState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PathClass {
    I,
    II,
    III,
}

impl PathClass {
    pub fn label(self) -> &'static str {
        match self {
            PathClass::I => "I",
            PathClass::II => "II",
            PathClass::III => "III",
        }
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionValue {
    pub z: f64,
    pub reachable: bool,
}

/// Base lengths at which the state changes, one per transition label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct TransitionValues {
    pub a: TransitionValue,
    pub b: TransitionValue,
    pub c: TransitionValue,
    pub d: TransitionValue,
    pub e: TransitionValue,
    pub f: TransitionValue,
    pub g: TransitionValue,
}

impl TransitionValues {
    pub fn get(&self, t: Transition) -> TransitionValue {
        match t {
            Transition::A => self.a,
            Transition::B => self.b,
            Transition::C => self.c,
            Transition::D => self.d,
            Transition::E => self.e,
            Transition::F => self.f,
            Transition::G => self.g,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Transition, TransitionValue)> + '_ {
        Transition::ALL.iter().map(move |&t| (t, self.get(t)))
    }
}

/// The leading lengths and tail sums every formula below is built from.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Leading {
    /// `l_{n-1}`, the base segment.
    pub top: f64,
    /// `l_{n-2}`.
    pub second: f64,
    /// `l_{n-3}`, zero for two segment arms.
    pub third: f64,
    /// Sum of `l_j` for `j <= n - 3`.
    pub s3: f64,
    /// Sum of `l_j` for `j <= n - 4`.
    pub s4: f64,
}

impl Leading {
    pub fn of(arm: &SortedArm) -> Self {
        let d = arm.lengths();
        let s3: f64 = d[2..].iter().sum();
        let s4: f64 = d.get(3..).map_or(0.0, |t| t.iter().sum());
        Self {
            top: d[0],
            second: d[1],
            third: d.get(2).copied().unwrap_or(0.0),
            s3,
            s4,
        }
    }
}

fn band(arm: &SortedArm, z: f64) -> f64 {
    EPS_REL * (arm.total() + z.abs())
}

fn compare(lhs: f64, rhs: f64, band: f64) -> Ordering {
    if (lhs - rhs).abs() <= band {
        Ordering::Equal
    } else if lhs < rhs {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn check_z(z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(ArmError::NonFinite);
    }
    if z <= 0.0 {
        return Err(ArmError::NonPositiveBaseLength(z));
    }
    Ok(())
}

pub fn reach_of(arm: &SortedArm) -> ReachInterval {
    reach_closed(arm.lengths()).expect("a sorted arm has valid lengths")
}

pub fn classify_connectivity(arm: &SortedArm, z: f64) -> Result<Connectivity> {
    check_z(z)?;
    let eps = band(arm, z);
    if !reach_of(arm).contains(z, eps) {
        return Ok(Connectivity::Infeasible);
    }
    let mut sides: Vec<f64> = arm.lengths().to_vec();
    sides.push(z);
    sides.sort_by(|a, b| b.total_cmp(a));
    let lhs = sides[0] + sides[3..].iter().sum::<f64>();
    let rhs = sides[1] + sides[2];
    Ok(match compare(lhs, rhs, eps) {
        Ordering::Equal => Connectivity::Critical,
        Ordering::Less => Connectivity::Two,
        Ordering::Greater => Connectivity::One,
    })
}

pub fn state_block(arm: &SortedArm, z: f64) -> Result<BlockState> {
    check_z(z)?;
    let eps = band(arm, z);
    let reach = reach_of(arm);
    if !reach.contains(z, eps) {
        return Err(ArmError::Unreachable {
            z,
            lo: reach.lo,
            hi: reach.hi,
        });
    }
    let k = Leading::of(arm);
    let at = |t| Ok(BlockState::Transition(t));
    if (z - k.top).abs() <= eps {
        return if k.second <= k.s3 + eps {
            at(Transition::B)
        } else {
            at(Transition::C)
        };
    }
    if arm.n() >= 3 && (z - k.third).abs() <= eps {
        return if k.top + k.s3 > k.third + k.second + eps {
            at(Transition::E)
        } else {
            at(Transition::F)
        };
    }
    let pick = |ord, gt, lt, mark| match ord {
        Ordering::Equal => BlockState::Transition(mark),
        Ordering::Greater => BlockState::Block(gt),
        Ordering::Less => BlockState::Block(lt),
    };
    Ok(if z > k.top {
        pick(
            compare(z + k.s3, k.top + k.second, eps),
            Block::GtTop,
            Block::LtTop,
            Transition::A,
        )
    } else if z > k.third {
        pick(
            compare(k.top + k.s3, z + k.second, eps),
            Block::GtMid,
            Block::LtMid,
            Transition::D,
        )
    } else {
        pick(
            compare(k.top + z + k.s4, k.second + k.third, eps),
            Block::GtBot,
            Block::LtBot,
            Transition::G,
        )
    })
}

pub fn transition_values(arm: &SortedArm) -> TransitionValues {
    let k = Leading::of(arm);
    let reach = reach_of(arm);
    let tv = |z: f64| TransitionValue {
        z,
        reachable: z > 0.0 && reach.contains(z, band(arm, z)),
    };
    TransitionValues {
        a: tv(k.top + k.second - k.s3),
        b: tv(k.top),
        c: tv(k.top),
        d: tv(k.top - k.second + k.s3),
        e: tv(k.third),
        f: tv(k.third),
        g: tv(k.second + k.third - k.top - k.s4),
    }
}

pub fn path_class(arm: &SortedArm) -> PathClass {
    if arm.n() == 2 {
        return PathClass::III;
    }
    let k = Leading::of(arm);
    let eps = EPS_REL * arm.total();
    if k.second <= k.s3 + eps {
        PathClass::I
    } else if arm.n() == 3 && (k.top - k.second).abs() <= eps {
        PathClass::III
    } else {
        PathClass::II
    }
}

/// Base lengths where the component count changes along the class path,
/// in path order (largest first).
pub fn vital_critical_values(arm: &SortedArm) -> Vec<f64> {
    let tv = transition_values(arm);
    let labels: &[Transition] = match path_class(arm) {
        PathClass::I => &[Transition::G],
        PathClass::II => &[Transition::A, Transition::D, Transition::G],
        PathClass::III => &[Transition::A, Transition::F],
    };
    let total = arm.total();
    labels
        .iter()
        .map(|&t| tv.get(t).z)
        .filter(|&z| z > 0.0 && z <= total + band(arm, z))
        .collect()
}

/// Everything known about one base length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologyReport {
    pub z: f64,
    pub connectivity: Connectivity,
    pub state: BlockState,
    pub class: PathClass,
    pub transitions: TransitionValues,
    pub vital: Vec<f64>,
}

impl TopologyReport {
    pub fn components(&self) -> usize {
        self.connectivity.components()
    }
}

pub fn topology_report(arm: &SortedArm, z: f64) -> Result<TopologyReport> {
    let state = state_block(arm, z)?;
    Ok(TopologyReport {
        z,
        connectivity: classify_connectivity(arm, z)?,
        state,
        class: path_class(arm),
        transitions: transition_values(arm),
        vital: vital_critical_values(arm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arm(l: &[f64]) -> SortedArm {
        SortedArm::from_lengths(l).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(
            classify_connectivity(&arm(&[3.0, 2.0, 2.0]), 4.0),
            Ok(Connectivity::One)
        );
        assert_eq!(
            classify_connectivity(&arm(&[2.0, 2.0, 1.0]), 0.5),
            Ok(Connectivity::Two)
        );
        assert_eq!(
            classify_connectivity(&arm(&[2.0, 2.0, 1.0]), 3.0),
            Ok(Connectivity::Critical)
        );
        assert_eq!(
            classify_connectivity(&arm(&[5.0, 1.0, 1.0]), 1.0),
            Ok(Connectivity::Infeasible)
        );
        assert!(classify_connectivity(&arm(&[2.0, 1.0]), 0.0).is_err());
    }

    #[test]
    fn block_examples() {
        let a = arm(&[4.0, 3.0, 2.0, 0.5]);
        assert_eq!(state_block(&a, 5.0), Ok(BlockState::Block(Block::GtTop)));
        assert_eq!(state_block(&a, 4.2), Ok(BlockState::Block(Block::LtTop)));
        assert_eq!(state_block(&a, 0.3), Ok(BlockState::Block(Block::LtBot)));
        assert_eq!(
            state_block(&a, 4.0),
            Ok(BlockState::Transition(Transition::C))
        );
        assert_eq!(
            state_block(&a, 2.0),
            Ok(BlockState::Transition(Transition::E))
        );
        assert_eq!(
            state_block(&a, 4.5),
            Ok(BlockState::Transition(Transition::A))
        );
        assert_eq!(
            state_block(&a, 3.5),
            Ok(BlockState::Transition(Transition::D))
        );
        assert_eq!(
            state_block(&a, 0.5),
            Ok(BlockState::Transition(Transition::G))
        );
        assert!(state_block(&a, 10.0).is_err());
        let b = arm(&[3.0, 2.5, 2.5, 0.5]);
        assert_eq!(
            state_block(&b, 3.0),
            Ok(BlockState::Transition(Transition::B))
        );
        let c = arm(&[2.0, 2.0, 1.0]);
        assert_eq!(
            state_block(&c, 1.0),
            Ok(BlockState::Transition(Transition::F))
        );
        assert_eq!(state_block(&c, 0.5), Ok(BlockState::Block(Block::LtBot)));
    }

    #[test]
    fn classes() {
        assert_eq!(path_class(&arm(&[3.0, 2.5, 2.5, 0.5])), PathClass::I);
        assert_eq!(path_class(&arm(&[4.0, 3.0, 2.0, 0.5])), PathClass::II);
        assert_eq!(path_class(&arm(&[2.0, 2.0, 1.0])), PathClass::III);
        assert_eq!(path_class(&arm(&[3.0, 2.0, 2.0])), PathClass::I);
        assert_eq!(path_class(&arm(&[2.0, 1.0])), PathClass::III);
        assert_eq!(vital_critical_values(&arm(&[3.0, 2.0, 2.0])), vec![1.0]);
        assert_eq!(vital_critical_values(&arm(&[2.0, 1.0])), vec![3.0]);
    }
}
