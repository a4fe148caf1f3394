// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Generic continuous inverse kinematics.
//!
//! Segments are indexed from the end effector inward: `l_0` is the
//! outermost segment and `l_{m-1}` the base. `x_p` is the distance from the
//! base of segment `p` to the end effector, so `x_{m-1} = z` and
//! `x_0 = l_0`. Each level `p >= 1` owns the triangle `(l_p, x_p, x_{p-1})`.
//!
//! An IK is described per level by a component function `f_{p-1}` giving
//! `x_{p-1}` from `x_p`, and a sign plan choosing which of the two mirror
//! triangles to use.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arm::{canonical_angle, Configuration};
use crate::error::{ArmError, Result};
use crate::reach::ReachInterval;
use crate::EPS_REL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Angles of the level triangle. `theta` sits at the base of segment `p`
/// between `l_p` and the chord `x_p`; `phi` sits at the end effector
/// between the chords `x_p` and `x_{p-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleAngles {
    pub theta: f64,
    pub phi: f64,
}

/// Interior angle between sides `b` and `c`, opposite side `a`.
///
/// Uses the sorted-side area product instead of `acos` so that slivers
/// keep full relative accuracy. A flatness deficit within a few ulps of the
/// longest side is taken as exactly flat.
fn corner(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|p, q| q.total_cmp(p));
    let [u, v, w] = s;
    let mut deficit = w - (u - v);
    if deficit.abs() <= 4.0 * f64::EPSILON * u {
        deficit = 0.0;
    }
    let area2 = (u + (v + w)) * deficit * (w + (u - v)) * (u + (v - w));
    area2.max(0.0).sqrt().atan2(b * b + c * c - a * a)
}

pub fn triangle_angles(sign: Sign, l_p: f64, x_p: f64, x_prev: f64) -> Result<TriangleAngles> {
    if !(l_p.is_finite() && x_p.is_finite() && x_prev.is_finite()) {
        return Err(ArmError::NonFinite);
    }
    if l_p <= 0.0 || x_p <= 0.0 || x_prev <= 0.0 {
        return Err(ArmError::DegenerateSide {
            a: l_p,
            b: x_p,
            c: x_prev,
        });
    }
    let longest = l_p.max(x_p).max(x_prev);
    let sum = l_p + x_p + x_prev;
    if 2.0 * longest - sum > EPS_REL * sum {
        return Err(ArmError::TriangleInequality {
            a: l_p,
            b: x_p,
            c: x_prev,
        });
    }
    let s = sign.factor();
    Ok(TriangleAngles {
        theta: canonical_angle(s * corner(x_prev, x_p, l_p)),
        phi: canonical_angle(s * corner(l_p, x_p, x_prev)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum IkcfKind {
    /// Hug the lower boundary `|x_p - l_p|`.
    Min,
    /// Hug the upper boundary `x_p + l_p`.
    Max,
    /// `Max` up to `x1`, `Min` from `x2`, linear in between.
    Step { x1: f64, x2: f64 },
    /// The outermost level, where `x_0 = l_0`.
    Const,
}

/// Component function `f_{p-1}`: maps `x_p` in `domain` to `x_{p-1}` in
/// `codomain`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ikcf {
    pub kind: IkcfKind,
    pub l_p: f64,
    pub codomain: ReachInterval,
    pub domain: ReachInterval,
}

impl Ikcf {
    fn min_branch(&self, x: f64) -> f64 {
        self.codomain.lo.max((x - self.l_p).abs())
    }

    fn max_branch(&self, x: f64) -> f64 {
        self.codomain.hi.min(x + self.l_p)
    }

    /// Evaluates without a domain check.
    pub fn apply(&self, x: f64) -> f64 {
        match self.kind {
            IkcfKind::Min => self.min_branch(x),
            IkcfKind::Max => self.max_branch(x),
            IkcfKind::Const => self.codomain.lo,
            IkcfKind::Step { x1, x2 } => {
                if x <= x1 {
                    self.max_branch(x)
                } else if x >= x2 {
                    self.min_branch(x)
                } else {
                    let t = (x - x1) / (x2 - x1);
                    (1.0 - t) * self.max_branch(x) + t * self.min_branch(x)
                }
            }
        }
    }
}

fn domain_tol(d: &ReachInterval) -> f64 {
    EPS_REL * d.hi.abs().max(1.0)
}

pub fn eval_ikcf(f: &Ikcf, x_p: f64) -> Result<f64> {
    if !f.domain.contains(x_p, domain_tol(&f.domain)) {
        return Err(ArmError::OutOfDomain {
            x: x_p,
            lo: f.domain.lo,
            hi: f.domain.hi,
        });
    }
    Ok(f.apply(x_p.clamp(f.domain.lo, f.domain.hi)))
}

/// Which quantity a level's switch set is keyed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignKey {
    /// The level's own chain value `x_p`.
    Chain,
    /// The base length `z`.
    BaseLength,
}

/// Piecewise constant sign over `[lo, ξ_last]`: sign `i` covers
/// `[ξ_{i-1}, ξ_i)`, the last interval is closed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignPlan {
    lo: f64,
    switches: Vec<(f64, Sign)>,
    key: SignKey,
}

impl SignPlan {
    pub fn new(lo: f64, switches: Vec<(f64, Sign)>, key: SignKey) -> Result<Self> {
        let ascending = switches.windows(2).all(|w| w[0].0 <= w[1].0);
        let finite = lo.is_finite() && switches.iter().all(|s| s.0.is_finite());
        if switches.is_empty() || !ascending || !finite || lo > switches[switches.len() - 1].0 {
            return Err(ArmError::InvalidSwitchSet);
        }
        Ok(Self { lo, switches, key })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.switches[self.switches.len() - 1].0
    }

    pub fn switches(&self) -> &[(f64, Sign)] {
        &self.switches
    }

    pub fn key(&self) -> SignKey {
        self.key
    }
}

pub fn interval_sign(plan: &SignPlan, x: f64) -> Result<Sign> {
    let tol = EPS_REL * plan.hi().abs().max(1.0);
    if !(x >= plan.lo - tol && x <= plan.hi() + tol) {
        return Err(ArmError::OutOfDomain {
            x,
            lo: plan.lo,
            hi: plan.hi(),
        });
    }
    let last = plan.switches[plan.switches.len() - 1].1;
    Ok(plan
        .switches
        .iter()
        .find(|(xi, _)| x.partial_cmp(xi) == Some(Ordering::Less))
        .map_or(last, |s| s.1))
}

/// Component function `f_{p-1}` and sign plan `S_p` of level `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub f: Ikcf,
    pub signs: SignPlan,
}

/// Chain `x_0..=x_{m-1}` for base length `z`, outermost first.
pub fn evaluate_chain(outer_first: &[f64], levels: &[Level], z: f64) -> Result<Vec<f64>> {
    let m = outer_first.len();
    if m < 2 || levels.len() != m - 1 {
        return Err(ArmError::PlanMismatch {
            expected: m.saturating_sub(1),
            found: levels.len(),
        });
    }
    if !z.is_finite() {
        return Err(ArmError::NonFinite);
    }
    if z <= 0.0 {
        return Err(ArmError::NonPositiveBaseLength(z));
    }
    let top = &levels[m - 2].f.domain;
    if !top.contains(z, domain_tol(top)) {
        return Err(ArmError::Unreachable {
            z,
            lo: top.lo,
            hi: top.hi,
        });
    }
    let mut x = vec![0.0; m];
    x[m - 1] = z;
    for p in (1..m).rev() {
        let v = eval_ikcf(&levels[p - 1].f, x[p])?;
        if v <= 0.0 {
            return Err(ArmError::ChainCollapsed {
                level: p - 1,
                value: v,
            });
        }
        x[p - 1] = v;
    }
    Ok(x)
}

/// Evaluates an IK at base length `z`. The result is base-first and puts
/// the end effector at `(z, 0)`.
pub fn evaluate_ik(outer_first: &[f64], levels: &[Level], z: f64) -> Result<Configuration> {
    let x = evaluate_chain(outer_first, levels, z)?;
    let m = outer_first.len();
    let mut theta = vec![0.0; m];
    let mut phi = vec![0.0; m];
    for p in 1..m {
        let level = &levels[p - 1];
        let key = match level.signs.key() {
            SignKey::Chain => x[p],
            SignKey::BaseLength => z,
        };
        let sign = interval_sign(&level.signs, key)?;
        let t = triangle_angles(sign, outer_first[p], x[p], x[p - 1])?;
        theta[p] = t.theta;
        phi[p] = t.phi;
    }
    let mut angles = vec![0.0; m];
    for q in 0..m {
        let mut turn = 0.0;
        for f in &phi[q + 1..] {
            turn += f;
        }
        angles[m - 1 - q] = theta[q] - turn;
    }
    Ok(Configuration::from_raw(angles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn iv(lo: f64, hi: f64) -> ReachInterval {
        ReachInterval { lo, hi }
    }

    #[test]
    fn triangle_examples() {
        let t = triangle_angles(Sign::Plus, 3.0, 5.0, 4.0).unwrap();
        assert!((t.theta - 0.927_295_218_001_612_2).abs() < 1e-15);
        assert!((t.phi - 0.643_501_108_793_284_4).abs() < 1e-15);
        let t = triangle_angles(Sign::Minus, 3.0, 5.0, 4.0).unwrap();
        assert!(t.theta < 0.0 && t.phi < 0.0);
        let t = triangle_angles(Sign::Plus, 2.0, 3.0, 1.0).unwrap();
        assert_eq!((t.theta, t.phi), (0.0, 0.0));
        let t = triangle_angles(Sign::Plus, 2.0, 1.0, 3.0).unwrap();
        assert_eq!((t.theta, t.phi), (PI, 0.0));
        let t = triangle_angles(Sign::Minus, 2.0, 1.0, 3.0).unwrap();
        assert_eq!((t.theta, t.phi), (PI, 0.0));
        let t = triangle_angles(Sign::Plus, 3.0, 1.0, 2.0).unwrap();
        assert_eq!((t.theta, t.phi), (0.0, PI));
        assert!(triangle_angles(Sign::Plus, 1.0, 0.0, 1.0).is_err());
        assert!(triangle_angles(Sign::Plus, 1.0, 3.0, 1.0).is_err());
    }

    #[test]
    fn ikcf_examples() {
        let min = Ikcf {
            kind: IkcfKind::Min,
            l_p: 2.0,
            codomain: iv(1.0, 3.0),
            domain: iv(0.0, 5.0),
        };
        assert_eq!(eval_ikcf(&min, 4.0), Ok(2.0));
        let max = Ikcf {
            kind: IkcfKind::Max,
            ..min
        };
        assert_eq!(eval_ikcf(&max, 0.5), Ok(2.5));
        let step = Ikcf {
            kind: IkcfKind::Step { x1: 2.0, x2: 4.0 },
            ..min
        };
        assert_eq!(eval_ikcf(&step, 3.0), Ok(2.0));
        assert!(eval_ikcf(&step, 5.5).is_err());
    }

    #[test]
    fn sign_examples() {
        let plan = SignPlan::new(
            0.0,
            vec![(2.0, Sign::Plus), (5.0, Sign::Minus)],
            SignKey::Chain,
        )
        .unwrap();
        assert_eq!(interval_sign(&plan, 1.0), Ok(Sign::Plus));
        assert_eq!(interval_sign(&plan, 3.0), Ok(Sign::Minus));
        assert_eq!(interval_sign(&plan, 5.0), Ok(Sign::Minus));
        assert_eq!(interval_sign(&plan, 2.0), Ok(Sign::Minus));
        assert!(interval_sign(&plan, 5.1).is_err());
        assert!(SignPlan::new(
            0.0,
            vec![(2.0, Sign::Plus), (1.0, Sign::Plus)],
            SignKey::Chain
        )
        .is_err());
    }

    fn two_link(l1: f64, l0: f64, sign: Sign) -> Vec<Level> {
        let hi = l1 + l0;
        vec![Level {
            f: Ikcf {
                kind: IkcfKind::Const,
                l_p: l1,
                codomain: iv(l0, l0),
                domain: iv((l1 - l0).abs(), hi),
            },
            signs: SignPlan::new((l1 - l0).abs(), vec![(hi, sign)], SignKey::Chain).unwrap(),
        }]
    }

    #[test]
    fn evaluate_examples() {
        let levels = two_link(2.0, 1.0, Sign::Plus);
        let c = evaluate_ik(&[1.0, 2.0], &levels, 3.0).unwrap();
        assert_eq!(c.angles(), &[0.0, 0.0]);
        let c = evaluate_ik(&[1.0, 2.0], &levels, 1.0).unwrap();
        assert_eq!(c.angles(), &[0.0, PI]);
        let levels = two_link(2.0, 2.0, Sign::Plus);
        let c = evaluate_ik(&[2.0, 2.0], &levels, 8f64.sqrt()).unwrap();
        assert!((c.angles()[0] - FRAC_PI_4).abs() < 1e-15);
        assert!((c.angles()[1] + FRAC_PI_4).abs() < 1e-15);
        assert!(evaluate_ik(&[2.0, 2.0], &levels, 4.5).is_err());
        assert!(evaluate_ik(&[2.0, 2.0, 1.0], &levels, 1.0).is_err());
    }
}
