// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Independent checks of the topology results and the solver.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arm::{
    angle_distance, canonical_angle, forward_kinematics, normalize_arm, ArmSpec, Configuration,
};
use crate::design::{design_pair, sweep_with, SweepRow, AGREEMENT_TOL};
use crate::error::{ArmError, Result};
use crate::reach::reach_closed;
use crate::topology::{classify_connectivity, Connectivity};
use crate::EPS_REL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Same,
    Different,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentCertificate {
    pub verdict: Verdict,
    pub psi_a: f64,
    pub psi_b: f64,
}

/// Tolerance on the base length of configurations handed to the
/// certificate, relative to `Σl + z`.
const BASE_TOL: f64 = 1e-8;
const PSI_TOL: f64 = 1e-9;

/// Signed angle between the polygon sides ranked second and third longest.
///
/// The polygon is the arm closed by the chord from the end effector back to
/// the base; that chord has length `z` and comes first in tie breaks.
pub fn psi(spec: &ArmSpec, cfg: &Configuration) -> Result<f64> {
    let e = forward_kinematics(spec, cfg)?;
    let z = e.x.hypot(e.y);
    let mut sides: Vec<(f64, f64)> = Vec::with_capacity(spec.n() + 1);
    sides.push((z, (-e.y).atan2(-e.x)));
    sides.extend(
        spec.lengths()
            .iter()
            .copied()
            .zip(cfg.angles().iter().copied()),
    );
    let mut order: Vec<usize> = (0..sides.len()).collect();
    order.sort_by(|&a, &b| sides[b].0.total_cmp(&sides[a].0));
    Ok(canonical_angle(sides[order[2]].1 - sides[order[1]].1))
}

pub fn component_certificate(
    spec: &ArmSpec,
    z: f64,
    a: &Configuration,
    b: &Configuration,
) -> Result<ComponentCertificate> {
    let tol = BASE_TOL * (spec.total() + z.abs());
    for cfg in [a, b] {
        let p = forward_kinematics(spec, cfg)?;
        let found = p.x.hypot(p.y);
        if (found - z).abs() > tol {
            return Err(ArmError::BaseLengthMismatch { expected: z, found });
        }
    }
    let psi_a = psi(spec, a)?;
    let psi_b = psi(spec, b)?;
    let verdict = if a.max_angle_diff(b) <= AGREEMENT_TOL {
        Verdict::Same
    } else if classify_connectivity(&normalize_arm(spec), z)? != Connectivity::Two
        || [psi_a, psi_b]
            .iter()
            .any(|p| p.abs() <= PSI_TOL || PI - p.abs() <= PSI_TOL)
    {
        Verdict::Inconclusive
    } else if (psi_a > 0.0) != (psi_b > 0.0) {
        Verdict::Different
    } else {
        Verdict::Same
    };
    Ok(ComponentCertificate {
        verdict,
        psi_a,
        psi_b,
    })
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let g = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = g;
            i = g;
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }

    fn roots(&mut self) -> usize {
        (0..self.parent.len() as u32)
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

/// Sign-flip links need the two configurations to coincide up to the
/// round-off of `acos` at a flat triangle.
const FLIP_RADIUS: f64 = 1e-6;

/// Chains and configurations of a small arm with a fixed base length.
struct Oracle {
    /// Outermost first.
    l: Vec<f64>,
    z: f64,
    tol: f64,
}

impl Oracle {
    fn n(&self) -> usize {
        self.l.len()
    }

    /// Full chain `x_0..=x_{n-1}` from the free values `x_1..x_{n-2}`.
    fn chain(&self, free: &[f64]) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.n());
        x.push(self.l[0]);
        x.extend_from_slice(free);
        x.push(self.z);
        x
    }

    fn feasible(&self, x: &[f64]) -> bool {
        x.iter().all(|&v| v > self.tol)
            && (1..x.len()).all(|p| {
                let (lp, a, b) = (self.l[p], x[p], x[p - 1]);
                a >= (b - lp).abs() - self.tol && a <= b + lp + self.tol
            })
    }

    /// Absolute orientations, base first, for a sign vector whose bit
    /// `p - 1` selects the mirrored triangle at level `p`.
    fn configuration(&self, x: &[f64], signs: usize) -> Vec<f64> {
        let n = self.n();
        let law = |opp: f64, b: f64, c: f64| {
            ((b * b + c * c - opp * opp) / (2.0 * b * c))
                .clamp(-1.0, 1.0)
                .acos()
        };
        let mut theta = vec![0.0; n];
        let mut phi = vec![0.0; n];
        for p in 1..n {
            let s = if signs >> (p - 1) & 1 == 1 { -1.0 } else { 1.0 };
            theta[p] = s * law(x[p - 1], x[p], self.l[p]);
            phi[p] = s * law(self.l[p], x[p], x[p - 1]);
        }
        (0..n)
            .rev()
            .map(|q| theta[q] - phi[q + 1..].iter().sum::<f64>())
            .collect()
    }

    /// Values of free coordinate `c` (chain index) that flatten one of the
    /// two triangles it belongs to, other coordinates held at `x`.
    fn folds(&self, x: &[f64], c: usize) -> [f64; 5] {
        let (below, above) = (x[c - 1], x[c + 1]);
        let (lc, la) = (self.l[c], self.l[c + 1]);
        [
            below + lc,
            (below - lc).abs(),
            above - la,
            la + above,
            la - above,
        ]
    }
}

/// Counts connected components of the configurations with base length `z`
/// by sampling chains and joining sign vectors where they meet.
///
/// The feasible chains `x_1..x_{n-2}` form a convex set, and for a fixed
/// sign vector the configuration depends continuously on the chain, so each
/// sign vector contributes one connected piece. Two pieces are joined when
/// their configurations coincide at some sample. Samples are a grid with
/// `resolution` points per axis plus, on every axis-parallel grid line, the
/// points where a triangle on that line goes flat.
pub fn brute_force_components(spec: &ArmSpec, z: f64, resolution: usize) -> Result<usize> {
    let n = spec.n();
    if n > 5 {
        return Err(ArmError::OracleTooLarge(n));
    }
    if resolution < 16 {
        return Err(ArmError::ResolutionTooLow(resolution));
    }
    if !z.is_finite() {
        return Err(ArmError::NonFinite);
    }
    if z <= 0.0 {
        return Err(ArmError::NonPositiveBaseLength(z));
    }
    let reach = reach_closed(spec.lengths())?;
    if !reach.contains(z, EPS_REL * (reach.hi + z)) {
        return Err(ArmError::Unreachable {
            z,
            lo: reach.lo,
            hi: reach.hi,
        });
    }
    let l: Vec<f64> = spec.lengths().iter().rev().copied().collect();
    let oracle = Oracle {
        tol: 1e-12 * (reach.hi + z),
        l,
        z,
    };
    let d = n - 2;
    let r = resolution;
    let cap: Vec<f64> = (0..d).map(|k| oracle.l[..=k + 1].iter().sum()).collect();
    let grid = |k: usize, i: usize| cap[k] * (i + 1) as f64 / r as f64;
    let unpack = |mut idx: usize| -> Vec<f64> {
        (0..d)
            .map(|k| {
                let i = idx % r;
                idx /= r;
                grid(k, i)
            })
            .collect()
    };

    let signs = 1usize << (n - 1);
    let mut set = DisjointSet::new(signs);
    let mut any = false;
    let mut visit = |x: &[f64]| {
        if !oracle.feasible(x) {
            return;
        }
        any = true;
        let configs: Vec<Vec<f64>> = (0..signs).map(|s| oracle.configuration(x, s)).collect();
        for s in 0..signs {
            for p in 0..n - 1 {
                let t = s ^ (1 << p);
                if t < s {
                    continue;
                }
                let dist = configs[s]
                    .iter()
                    .zip(&configs[t])
                    .map(|(a, b)| angle_distance(*a, *b))
                    .fold(0.0, f64::max);
                if dist <= FLIP_RADIUS {
                    set.union(s as u32, t as u32);
                }
            }
        }
    };

    let cells = r.pow(d as u32);
    for idx in 0..cells {
        let mut x = oracle.chain(&unpack(idx));
        visit(&x);
        for k in 0..d {
            // Each line along axis k is visited once, from its first cell.
            if (idx / r.pow(k as u32)) % r != 0 {
                continue;
            }
            let folds = oracle.folds(&x, k + 1);
            let keep = x[k + 1];
            for v in folds {
                x[k + 1] = v;
                visit(&x);
            }
            x[k + 1] = keep;
        }
    }
    Ok(if any { set.roots() } else { 0 })
}

/// Steps of at least this size (radians) are reported as jumps.
pub const JUMP_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpLocation {
    /// 0 for the first member of the pair, 1 for the second.
    pub member: usize,
    /// Base length at the end of the step.
    pub z: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    /// Largest per-row change of either member, largest joint first.
    pub max_step: [f64; 2],
    /// Coarse max step divided by the max step on a 4x finer grid.
    pub refinement_ratio: Option<[f64; 2]>,
    pub jump_locations: Vec<JumpLocation>,
}

pub fn continuity_report(rows: &[SweepRow]) -> Result<ContinuityReport> {
    if rows.len() < 3 {
        return Err(ArmError::TooFewRows(rows.len()));
    }
    let mut max_step = [0.0f64; 2];
    let mut jump_locations = Vec::new();
    for w in rows.windows(2) {
        for (m, slot) in max_step.iter_mut().enumerate() {
            let step = w[0].ik[m].max_angle_diff(&w[1].ik[m]);
            *slot = slot.max(step);
            if step >= JUMP_THRESHOLD {
                jump_locations.push(JumpLocation {
                    member: m,
                    z: w[1].z,
                    step,
                });
            }
        }
    }
    Ok(ContinuityReport {
        max_step,
        refinement_ratio: None,
        jump_locations,
    })
}

fn ratio(coarse: f64, fine: f64) -> f64 {
    if fine == 0.0 {
        f64::INFINITY
    } else {
        coarse / fine
    }
}

/// Sweeps `[z_from, z_to]` with `rows` rows and again with four times as
/// many intervals, and reports on the finer sweep.
pub fn refined_continuity_report(
    spec: &ArmSpec,
    z_from: f64,
    z_to: f64,
    rows: usize,
) -> Result<ContinuityReport> {
    if rows < 3 {
        return Err(ArmError::TooFewRows(rows));
    }
    let plan = design_pair(&normalize_arm(spec));
    let coarse = continuity_report(&sweep_with(&plan, z_from, z_to, rows)?)?;
    let mut fine = continuity_report(&sweep_with(&plan, z_from, z_to, 4 * (rows - 1) + 1)?)?;
    fine.refinement_ratio = Some([
        ratio(coarse.max_step[0], fine.max_step[0]),
        ratio(coarse.max_step[1], fine.max_step[1]),
    ]);
    Ok(fine)
}
