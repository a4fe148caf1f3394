// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Paired inverse kinematics and the top level solver.
//!
//! Both members of a pair share their component functions and differ only
//! in the sign plans. Wherever the space has two components the members land
//! in different ones, and wherever it is connected they coincide. Indexing
//! follows [`crate::engine`]: level `p` counts from the end effector.

use serde::Serialize;

use crate::arm::{
    lift_rotation, normalize_arm, permute_configuration, ArmSpec, Configuration, EndEffectorTarget,
    SortedArm,
};
use crate::engine::{evaluate_chain, evaluate_ik, Ikcf, IkcfKind, Level, Sign, SignKey, SignPlan};
use crate::error::{ArmError, Result};
use crate::reach::{reach_recursive, ReachInterval};
use crate::topology::{
    classify_connectivity, path_class, topology_report, transition_values, BlockState,
    Connectivity, Leading, PathClass, TopologyReport, Transition,
};
use crate::EPS_REL;

/// Angle tolerance under which the two members count as the same
/// configuration.
pub const AGREEMENT_TOL: f64 = 1e-9;

/// Selects one member of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Member {
    First,
    Second,
}

/// Chain values of the collinear configuration at a transition, base
/// first: `x_{n-1} = z`, then `x_{n-2}`, down to `x_0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalChain {
    pub transition: Transition,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IkPlan {
    class: PathClass,
    arm: SortedArm,
    outer_first: Vec<f64>,
    reach: Vec<ReachInterval>,
    first: Vec<Level>,
    second: Vec<Level>,
    critical: Vec<CriticalChain>,
}

impl IkPlan {
    pub fn class(&self) -> PathClass {
        self.class
    }

    pub fn arm(&self) -> &SortedArm {
        &self.arm
    }

    /// Lengths ordered from the end effector inward.
    pub fn outer_first(&self) -> &[f64] {
        &self.outer_first
    }

    /// Reach of each outer sub-chain; entry `p` is the range of `x_p`.
    pub fn prefix_reach(&self) -> &[ReachInterval] {
        &self.reach
    }

    pub fn reach(&self) -> ReachInterval {
        self.reach[self.reach.len() - 1]
    }

    /// Levels `1..n` of one member, stored at index `p - 1`.
    pub fn levels(&self, member: Member) -> &[Level] {
        match member {
            Member::First => &self.first,
            Member::Second => &self.second,
        }
    }

    pub fn critical_chains(&self) -> &[CriticalChain] {
        &self.critical
    }

    pub fn chain(&self, z: f64) -> Result<Vec<f64>> {
        evaluate_chain(&self.outer_first, &self.first, z)
    }

    /// One member at base length `z`, in sorted base-first order.
    pub fn evaluate(&self, member: Member, z: f64) -> Result<Configuration> {
        evaluate_ik(&self.outer_first, self.levels(member), z)
    }

    pub fn evaluate_pair(&self, z: f64) -> Result<[Configuration; 2]> {
        Ok([
            self.evaluate(Member::First, z)?,
            self.evaluate(Member::Second, z)?,
        ])
    }

    pub fn solve_restricted(&self, z: f64) -> Result<RestrictedSolution> {
        let connectivity = classify_connectivity(&self.arm, z)?;
        if connectivity == Connectivity::Infeasible {
            let r = self.reach();
            return Err(ArmError::Unreachable {
                z,
                lo: r.lo,
                hi: r.hi,
            });
        }
        let pair = self.evaluate_pair(z)?;
        Ok(RestrictedSolution {
            z,
            connectivity,
            pair,
        })
    }
}

/// Both members at one base length, in the sorted frame.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSolution {
    pub z: f64,
    pub connectivity: Connectivity,
    pub pair: [Configuration; 2],
}

impl RestrictedSolution {
    /// One configuration per component, first member first.
    pub fn configurations(&self) -> Vec<Configuration> {
        self.pair[..self.connectivity.components()].to_vec()
    }

    pub fn agreement(&self) -> bool {
        self.pair[0].max_angle_diff(&self.pair[1]) <= AGREEMENT_TOL
    }
}

/// Builds a switch list ending at `hi`, keeping interior points ascending
/// and no larger than `hi`.
fn switches(points: &[(f64, Sign)], hi: f64, last: Sign) -> Vec<(f64, Sign)> {
    let mut out: Vec<(f64, Sign)> = Vec::with_capacity(points.len() + 1);
    let mut floor = f64::NEG_INFINITY;
    for &(xi, s) in points {
        let xi = xi.min(hi).max(floor);
        floor = xi;
        out.push((xi, s));
    }
    out.push((hi, last));
    out
}

fn plan(lo: f64, points: &[(f64, Sign)], hi: f64, key: SignKey) -> SignPlan {
    SignPlan::new(lo, switches(points, hi, Sign::Plus), key)
        .expect("design switch sets are ascending")
}

fn critical_chain(arm: &SortedArm, t: Transition, z: f64) -> CriticalChain {
    let n = arm.n();
    let mut values = Vec::with_capacity(n);
    values.push(z);
    let mut x = z;
    for k in (1..n).rev() {
        let l = arm.outer(k);
        x = if t == Transition::G && k == n - 1 {
            x + l
        } else {
            (x - l).abs()
        };
        values.push(x);
    }
    CriticalChain {
        transition: t,
        values,
    }
}

/// Builds the pair for the arm's path class.
pub fn design_pair(arm: &SortedArm) -> IkPlan {
    use Sign::{Minus, Plus};

    let n = arm.n();
    let class = path_class(arm);
    let outer_first = arm.outer_first();
    let reach = reach_recursive(&outer_first).expect("a sorted arm has valid lengths");
    let tv = transition_values(arm);
    let k = Leading::of(arm);
    let (za, zd, zf, zg) = (tv.a.z, tv.d.z, tv.f.z, tv.g.z);

    let mut kinds: Vec<IkcfKind> = vec![IkcfKind::Max; n - 1];
    kinds[0] = IkcfKind::Const;
    if matches!(class, PathClass::I | PathClass::II) && n >= 4 && zg > 0.0 {
        kinds[n - 3] = IkcfKind::Min;
    }
    match class {
        PathClass::II => kinds[n - 2] = IkcfKind::Step { x1: zg, x2: zd },
        PathClass::III if n >= 3 => kinds[n - 2] = IkcfKind::Min,
        _ => {}
    }
    let fs: Vec<Ikcf> = (1..n)
        .map(|p| Ikcf {
            kind: kinds[p - 1],
            l_p: outer_first[p],
            codomain: reach[p - 1],
            domain: reach[p],
        })
        .collect();

    let uniform = |p: usize| plan(reach[p].lo, &[], reach[p].hi, SignKey::Chain);
    let mut first: Vec<SignPlan> = (1..n).map(uniform).collect();
    let mut second = first.clone();
    let top = n - 1;
    let z_range = reach[top];
    let xg = zg + k.top;

    match class {
        PathClass::I => {
            let r = reach[n - 2];
            first[n - 3] = plan(r.lo, &[(xg, Plus)], r.hi, SignKey::Chain);
            second[n - 3] = plan(r.lo, &[(xg, Minus)], r.hi, SignKey::Chain);
        }
        PathClass::II => {
            first[top - 1] = plan(
                z_range.lo,
                &[(zd, Plus), (za, Plus)],
                z_range.hi,
                SignKey::Chain,
            );
            second[top - 1] = plan(
                z_range.lo,
                &[(zd, Plus), (za, Minus)],
                z_range.hi,
                SignKey::Chain,
            );
            let r = reach[n - 2];
            first[n - 3] = plan(r.lo, &[(xg, Plus)], r.hi, SignKey::Chain);
            second[n - 3] = plan(z_range.lo, &[(zg, Minus)], z_range.hi, SignKey::BaseLength);
        }
        PathClass::III if n == 2 => {
            first[0] = plan(z_range.lo, &[(za, Plus)], z_range.hi, SignKey::Chain);
            second[0] = plan(z_range.lo, &[(za, Minus)], z_range.hi, SignKey::Chain);
        }
        PathClass::III => {
            first[top - 1] = plan(
                z_range.lo,
                &[(zf, Plus), (za, Plus)],
                z_range.hi,
                SignKey::Chain,
            );
            second[top - 1] = plan(
                z_range.lo,
                &[(zf, Plus), (za, Minus)],
                z_range.hi,
                SignKey::Chain,
            );
            let r = reach[n - 2];
            first[n - 3] = plan(r.lo, &[(r.lo, Plus)], r.hi, SignKey::Chain);
            second[n - 3] = plan(z_range.lo, &[(zf, Minus)], z_range.hi, SignKey::BaseLength);
        }
    }

    let levels = |signs: Vec<SignPlan>| -> Vec<Level> {
        fs.iter()
            .zip(signs)
            .map(|(f, signs)| Level { f: *f, signs })
            .collect()
    };
    let labels: &[Transition] = match class {
        PathClass::I => &[Transition::G],
        PathClass::II => &[Transition::A, Transition::D, Transition::G],
        PathClass::III => &[Transition::A, Transition::F],
    };
    let critical = labels
        .iter()
        .map(|&t| critical_chain(arm, t, tv.get(t).z))
        .collect();

    IkPlan {
        class,
        arm: arm.clone(),
        outer_first,
        reach,
        first: levels(first),
        second: levels(second),
        critical,
    }
}

pub fn solve_restricted(arm: &SortedArm, z: f64) -> Result<Vec<Configuration>> {
    Ok(design_pair(arm).solve_restricted(z)?.configurations())
}

/// Result of a full solve in user order and workspace orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub target: EndEffectorTarget,
    pub sorted: SortedArm,
    pub report: TopologyReport,
    /// Both members, lifted to the target.
    pub pair: [Configuration; 2],
    /// One configuration per component.
    pub configurations: Vec<Configuration>,
    pub agreement: bool,
}

impl Solution {
    pub fn z(&self) -> f64 {
        self.target.z()
    }

    pub fn rho(&self) -> f64 {
        self.target.rho()
    }
}

/// Maps a sorted-frame configuration back to user order.
fn to_user(arm: &SortedArm, cfg: &Configuration) -> Configuration {
    permute_configuration(cfg, arm.perm()).expect("plan and arm agree on size")
}

pub fn solve(spec: &ArmSpec, target: EndEffectorTarget) -> Result<Solution> {
    let sorted = normalize_arm(spec);
    solve_with(&design_pair(&sorted), target)
}

/// Solves against a prebuilt plan.
pub fn solve_with(plan: &IkPlan, target: EndEffectorTarget) -> Result<Solution> {
    let arm = plan.arm();
    let rs = plan.solve_restricted(target.z())?;
    let report = topology_report(arm, target.z())?;
    let lift = |c: &Configuration| lift_rotation(arm.original(), &to_user(arm, c), target.rho());
    let pair = [lift(&rs.pair[0])?, lift(&rs.pair[1])?];
    let configurations = pair[..rs.connectivity.components()].to_vec();
    Ok(Solution {
        target,
        sorted: arm.clone(),
        agreement: rs.agreement(),
        report,
        pair,
        configurations,
    })
}

/// One grid point of a sweep, in user order with the end effector on the
/// positive x axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub z: f64,
    pub state: BlockState,
    pub connectivity: Connectivity,
    pub ik: [Configuration; 2],
}

impl SweepRow {
    pub fn components(&self) -> usize {
        self.connectivity.components()
    }
}

pub fn sweep(spec: &ArmSpec, z_from: f64, z_to: f64, steps: usize) -> Result<Vec<SweepRow>> {
    let sorted = normalize_arm(spec);
    sweep_with(&design_pair(&sorted), z_from, z_to, steps)
}

pub fn sweep_with(plan: &IkPlan, z_from: f64, z_to: f64, steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(ArmError::InvalidSweep(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    if !(z_from.is_finite() && z_to.is_finite()) {
        return Err(ArmError::NonFinite);
    }
    if z_from <= 0.0 || z_to <= 0.0 {
        return Err(ArmError::InvalidSweep(
            "bounds must be positive".to_string(),
        ));
    }
    if z_from == z_to {
        return Err(ArmError::InvalidSweep("bounds coincide".to_string()));
    }
    let arm = plan.arm();
    let r = plan.reach();
    for z in [z_from, z_to] {
        if !r.contains(z, EPS_REL * (r.hi + z)) {
            return Err(ArmError::Unreachable {
                z,
                lo: r.lo,
                hi: r.hi,
            });
        }
    }
    let span = z_to - z_from;
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let z = if i + 1 == steps {
                z_to
            } else {
                z_from + span * (i as f64 / last)
            };
            let rs = plan.solve_restricted(z)?;
            let [a, b] = &rs.pair;
            Ok(SweepRow {
                z,
                state: crate::topology::state_block(arm, z)?,
                connectivity: rs.connectivity,
                ik: [to_user(arm, a), to_user(arm, b)],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arm::forward_kinematics;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn arm(l: &[f64]) -> SortedArm {
        SortedArm::from_lengths(l).unwrap()
    }

    fn xs(p: &SignPlan) -> Vec<f64> {
        p.switches().iter().map(|s| s.0).collect()
    }

    #[test]
    fn class_one_plan() {
        let plan = design_pair(&arm(&[3.0, 2.5, 2.5, 0.5]));
        assert_eq!(plan.class(), PathClass::I);
        let s = &plan.levels(Member::Second)[1].signs;
        assert_eq!(xs(s), vec![4.5, 5.5]);
        assert_eq!(s.switches()[0].1, Sign::Minus);
        assert!(plan.levels(Member::First)[1]
            .signs
            .switches()
            .iter()
            .all(|s| s.1 == Sign::Plus));
        assert_eq!(plan.levels(Member::First)[2].f.kind, IkcfKind::Max);
        assert_eq!(plan.levels(Member::First)[1].f.kind, IkcfKind::Min);
        assert_eq!(plan.levels(Member::First)[0].f.kind, IkcfKind::Const);
    }

    #[test]
    fn class_two_plan() {
        let plan = design_pair(&arm(&[4.0, 3.0, 2.0, 0.5]));
        assert_eq!(plan.class(), PathClass::II);
        assert_eq!(
            xs(&plan.levels(Member::Second)[2].signs),
            vec![3.5, 4.5, 9.5]
        );
        assert_eq!(xs(&plan.levels(Member::First)[1].signs), vec![4.5, 5.5]);
        assert_eq!(
            plan.levels(Member::First)[2].f.kind,
            IkcfKind::Step { x1: 0.5, x2: 3.5 }
        );
    }

    #[test]
    fn class_three_plan() {
        let plan = design_pair(&arm(&[2.0, 2.0, 1.0]));
        assert_eq!(plan.class(), PathClass::III);
        assert_eq!(
            xs(&plan.levels(Member::Second)[1].signs),
            vec![1.0, 3.0, 5.0]
        );
        assert_eq!(plan.levels(Member::First)[1].f.kind, IkcfKind::Min);
        assert_eq!(plan.levels(Member::First)[0].f.kind, IkcfKind::Const);
    }

    #[test]
    fn restricted_examples() {
        let c = solve_restricted(&arm(&[2.0, 1.0]), 3.0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].angles(), &[0.0, 0.0]);
        let c = solve_restricted(&arm(&[2.0, 2.0]), 8f64.sqrt()).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0].angles()[0] - FRAC_PI_4).abs() < 1e-12);
        assert!((c[1].angles()[0] + FRAC_PI_4).abs() < 1e-12);
        let c = solve_restricted(&arm(&[3.0, 2.5, 2.5, 0.5]), 1.5).unwrap();
        assert_eq!(c.len(), 1);
        for a in c[0].angles() {
            assert!(a.abs() < 1e-6 || (a.abs() - PI).abs() < 1e-6);
        }
        assert!(solve_restricted(&arm(&[5.0, 1.0, 1.0]), 1.0).is_err());
    }

    #[test]
    fn solve_examples() {
        let spec = ArmSpec::new(vec![2.0, 2.0]).unwrap();
        let s = solve(&spec, EndEffectorTarget::new(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(s.configurations.len(), 2);
        let a = s.configurations[0].angles();
        let b = s.configurations[1].angles();
        assert!((a[0] - FRAC_PI_2).abs() < 1e-12 && a[1].abs() < 1e-12);
        assert!(b[0].abs() < 1e-12 && (b[1] - FRAC_PI_2).abs() < 1e-12);
        for c in &s.configurations {
            let p = forward_kinematics(&spec, c).unwrap();
            assert!((p.x - 2.0).abs() < 1e-12 && (p.y - 2.0).abs() < 1e-12);
        }
        let spec = ArmSpec::new(vec![1.0, 3.0, 2.0]).unwrap();
        let s = solve(&spec, EndEffectorTarget::new(6.0, 0.0).unwrap()).unwrap();
        assert_eq!(s.configurations.len(), 1);
        assert_eq!(s.configurations[0].angles(), &[0.0, 0.0, 0.0]);
        let spec = ArmSpec::new(vec![5.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            solve(&spec, EndEffectorTarget::new(1.0, 0.0).unwrap()),
            Err(ArmError::Unreachable {
                z: 1.0,
                lo: 3.0,
                hi: 7.0
            })
        );
    }

    #[test]
    fn sweep_examples() {
        let spec = ArmSpec::new(vec![2.0, 2.0, 1.0]).unwrap();
        let rows = sweep(&spec, 0.2, 3.2, 4).unwrap();
        let counts: Vec<usize> = rows.iter().map(|r| r.components()).collect();
        assert_eq!(counts, vec![2, 2, 2, 1]);
        assert!(sweep(&spec, 1.0, 1.0, 2).is_err());
        assert!(sweep(&spec, 1.0, 2.0, 1).is_err());
        let spec = ArmSpec::new(vec![2.0, 1.0]).unwrap();
        let rows = sweep(&spec, 1.0, 3.0, 3).unwrap();
        let kinds: Vec<Connectivity> = rows.iter().map(|r| r.connectivity).collect();
        assert_eq!(
            kinds,
            vec![
                Connectivity::Critical,
                Connectivity::Two,
                Connectivity::Critical
            ]
        );
    }
}
