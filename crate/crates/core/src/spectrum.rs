//! Bound-state levels from the quantization condition `α + β = (j + 1)π`.
//!
//! A single amplitude function starts at the junction `Nπ/2` with `A = 1`,
//! `A' = 0`, `p = 0` and is carried out to both converged tails. The left
//! run gives `α = −p(−∞)`, the right run `β = p(+∞)`, and their sum `Φ(E)` is
//! an increasing staircase whose crossings of integer multiples of π are the
//! levels.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milne::{
    integrate_interval, integrate_tail, AmplitudePhaseState, Direction, SolverSettings,
};
use crate::potential::{Potential, Segment};

/// Distance kept from `min(v1, v2)` and from zero when scanning energies.
pub const ENERGY_MARGIN: f64 = 1e-6;
/// Bracket width at which level bisection stops.
pub const ENERGY_TOL: f64 = 1e-10;
/// Largest admissible `|Φ(E_j) − (j + 1)π|` for a returned level.
pub const PHASE_RESIDUAL_TOL: f64 = 1e-8;
pub const DEFAULT_SCAN_POINTS: usize = 400;
pub const MIN_SCAN_POINTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub index_j: usize,
    pub energy: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Level {
    pub fn total_phase(&self) -> f64 {
        self.alpha + self.beta
    }

    pub fn phase_residual(&self) -> f64 {
        self.total_phase() - (self.index_j as f64 + 1.0) * PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSplit {
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Open energy interval searched for levels, or `None` when it is empty.
pub fn energy_window(pot: &Potential) -> Option<(f64, f64)> {
    let lo = pot.min_depth() + ENERGY_MARGIN;
    let hi = -ENERGY_MARGIN;
    (lo < hi).then_some((lo, hi))
}

pub fn total_phase(energy: f64, pot: &Potential, settings: &SolverSettings) -> Result<PhaseSplit> {
    let lower = pot.min_depth();
    if !(energy > lower && energy < 0.0) {
        return Err(Error::EnergyOutOfRange {
            energy,
            lower,
            upper: 0.0,
        });
    }
    let mass = pot.mass();
    let start = AmplitudePhaseState::UNIT;
    let center = pot.junction();

    let left = integrate_interval(start, center, 0.0, energy, mass, pot, settings)?;
    let alpha = -left.p + integrate_tail(left, 0.0, Direction::Left, energy, mass, settings)?;

    let edge = pot.support_end();
    let right = integrate_interval(start, center, edge, energy, mass, pot, settings)?;
    let beta = right.p + integrate_tail(right, edge, Direction::Right, energy, mass, settings)?;

    Ok(PhaseSplit {
        phi: alpha + beta,
        alpha,
        beta,
    })
}

/// All bound states in `(min(v1, v2), 0)`, ascending in energy.
///
/// `Φ` is sampled on `scan_points` uniform energies, checked to be strictly
/// increasing, and every bracketed crossing of a multiple of π is bisected.
pub fn find_levels(
    pot: &Potential,
    settings: &SolverSettings,
    scan_points: usize,
) -> Result<Vec<Level>> {
    settings.validate()?;
    if scan_points < MIN_SCAN_POINTS {
        return Err(Error::InvalidSettings(format!(
            "scan_points must be at least {MIN_SCAN_POINTS}, got {scan_points}"
        )));
    }
    let Some((lo, hi)) = energy_window(pot) else {
        return Ok(Vec::new());
    };
    let step = (hi - lo) / (scan_points - 1) as f64;
    let energies: Vec<f64> = (0..scan_points)
        .map(|i| {
            if i + 1 == scan_points {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect();
    let phases: Vec<f64> = energies
        .par_iter()
        .map(|&e| total_phase(e, pot, settings).map(|s| s.phi))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    let mut below = (phases[0] / PI).floor() as usize;
    if below > 0 {
        return Err(Error::Resolution {
            lower: pot.min_depth(),
            upper: energies[0],
            crossings: below,
        });
    }
    for i in 0..scan_points - 1 {
        let (p0, p1) = (phases[i], phases[i + 1]);
        if !(p1 > p0) {
            return Err(Error::NonMonotonePhase {
                lower: energies[i],
                upper: energies[i + 1],
                phase_lower: p0,
                phase_upper: p1,
            });
        }
        let above = (p1 / PI).floor() as usize;
        match above - below {
            0 => {}
            1 => brackets.push((above, energies[i], energies[i + 1])),
            crossings => {
                return Err(Error::Resolution {
                    lower: energies[i],
                    upper: energies[i + 1],
                    crossings,
                })
            }
        }
        below = above;
    }

    brackets
        .par_iter()
        .map(|&(multiple, e_lo, e_hi)| refine_level(pot, settings, multiple, e_lo, e_hi))
        .collect()
}

fn refine_level(
    pot: &Potential,
    settings: &SolverSettings,
    multiple: usize,
    mut lo: f64,
    mut hi: f64,
) -> Result<Level> {
    let target = multiple as f64 * PI;
    let mut best: Option<(f64, PhaseSplit)> = None;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let split = total_phase(mid, pot, settings)?;
        let residual = split.phi - target;
        if best.is_none_or(|(_, b)| residual.abs() < (b.phi - target).abs()) {
            best = Some((mid, split));
        }
        if residual < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = hi - lo;
        let converged = width < ENERGY_TOL && residual.abs() < 0.1 * PHASE_RESIDUAL_TOL;
        if converged || width <= 4.0 * f64::EPSILON * mid.abs() {
            break;
        }
    }
    let (energy, split) = best.expect("bisection evaluates at least once");
    Ok(Level {
        index_j: multiple - 1,
        energy,
        alpha: split.alpha,
        beta: split.beta,
    })
}

/// Samples `F(x) = A(x)·sin(p(x) + α)` on `grid`.
///
/// The normalization is `F(Nπ/2) = sin α`, `F'(Nπ/2) = cos α`. In the
/// exterior regions the phase is evaluated from the remaining tail phase at
/// `x`, so the decaying branch is not swamped by the exponentially growing
/// amplitude.
pub fn wavefunction(
    level: &Level,
    pot: &Potential,
    settings: &SolverSettings,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let energy = level.energy;
    let mass = pot.mass();
    let center = pot.junction();
    let mut values = vec![0.0; grid.len()];

    let mut right: Vec<usize> = (0..grid.len()).filter(|&i| grid[i] >= center).collect();
    right.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));
    let mut left: Vec<usize> = (0..grid.len()).filter(|&i| grid[i] < center).collect();
    left.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]));

    let parity = if level.index_j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    for (indices, direction) in [(right, Direction::Right), (left, Direction::Left)] {
        let mut state = AmplitudePhaseState::UNIT;
        let mut x_prev = center;
        for i in indices {
            let x = grid[i];
            state = integrate_interval(state, x_prev, x, energy, mass, pot, settings)?;
            x_prev = x;
            values[i] = match (direction, pot.segment_of(x)) {
                (Direction::Right, Segment::ExteriorRight) => {
                    let rest = integrate_tail(state, x, direction, energy, mass, settings)?;
                    parity * state.a * rest.sin()
                }
                (Direction::Left, Segment::ExteriorLeft) => {
                    let rest = integrate_tail(state, x, direction, energy, mass, settings)?;
                    state.a * rest.sin()
                }
                _ => state.a * (state.p + level.alpha).sin(),
            };
        }
    }
    Ok(grid.iter().copied().zip(values).collect())
}
