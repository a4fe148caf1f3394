// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Attainable base lengths of an arm and of its outer sub-chains.

use serde::Serialize;

use crate::error::{ArmError, Result};

/// Closed interval `[lo, hi]` of distances the end effector can take from
/// the base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReachInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ReachInterval {
    /// Membership test with an absolute slack `tol` on both ends.
    pub fn contains(&self, z: f64, tol: f64) -> bool {
        z >= self.lo - tol && z <= self.hi + tol
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn check(lengths: &[f64]) -> Result<()> {
    if lengths.is_empty() {
        return Err(ArmError::Empty);
    }
    match lengths
        .iter()
        .enumerate()
        .find(|(_, l)| !(l.is_finite() && **l > 0.0))
    {
        Some((index, &value)) => Err(ArmError::InvalidLength { index, value }),
        None => Ok(()),
    }
}

/// Reach of a multiset of lengths: `hi` is the sum, `lo` is what is left
/// of the longest segment once every other one is folded back onto it.
pub fn reach_closed(lengths: &[f64]) -> Result<ReachInterval> {
    check(lengths)?;
    let hi: f64 = lengths.iter().sum();
    let max = lengths.iter().copied().fold(0.0, f64::max);
    Ok(ReachInterval {
        lo: (max - (hi - max)).max(0.0),
        hi,
    })
}

/// Reach of every prefix of an outermost-first length list.
///
/// Entry `p` covers segments `0..=p`, i.e. the distance from the base of
/// segment `p` to the end effector.
pub fn reach_recursive(outer_first: &[f64]) -> Result<Vec<ReachInterval>> {
    check(outer_first)?;
    let mut out = Vec::with_capacity(outer_first.len());
    let mut cur = ReachInterval {
        lo: outer_first[0],
        hi: outer_first[0],
    };
    out.push(cur);
    for &l in &outer_first[1..] {
        let lo = if l <= cur.lo {
            cur.lo - l
        } else if l <= cur.hi {
            0.0
        } else {
            l - cur.hi
        };
        cur = ReachInterval { lo, hi: cur.hi + l };
        out.push(cur);
    }
    Ok(out)
}
