//! Amplitude-phase integration of the Schrödinger equation.
//!
//! The state `(A, A', p)` obeys
//!
//! ```text
//! A'' = A⁻³ − 2m(E − V)A,    p' = A⁻²
//! ```
//!
//! so `A·cos p` and `A·sin p` are two independent solutions of
//! `F'' + 2m(E − V)F = 0` with unit Wronskian.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{self, Tolerance};
use crate::potential::{FreeSpace, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudePhaseState {
    pub a: f64,
    pub a_prime: f64,
    pub p: f64,
}

impl AmplitudePhaseState {
    /// `A = 1, A' = 0, p = 0`, the start condition used at every matching point.
    pub const UNIT: Self = Self {
        a: 1.0,
        a_prime: 0.0,
        p: 0.0,
    };

    pub fn new(a: f64, a_prime: f64, p: f64) -> Self {
        Self { a, a_prime, p }
    }

    fn to_array(self) -> [f64; 3] {
        [self.a, self.a_prime, self.p]
    }

    fn from_array(y: [f64; 3]) -> Self {
        Self::new(y[0], y[1], y[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub da: f64,
    pub da_prime: f64,
    pub dp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// A tail is converged once one π-long chunk adds less phase than this.
    pub tail_phase_tol: f64,
    /// Hard cap on how far a tail integration may run past its start.
    pub tail_max_extent: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            tail_phase_tol: 1e-12,
            tail_max_extent: 1e4,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("tail_phase_tol", self.tail_phase_tol),
            ("tail_max_extent", self.tail_max_extent),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidSettings(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            rel: self.rel_tol,
            abs: self.abs_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        }
    }
}

pub fn rhs(
    state: &AmplitudePhaseState,
    x: f64,
    energy: f64,
    mass: f64,
    profile: &impl Profile,
) -> Result<StateDerivative> {
    if !(state.a > 0.0) {
        return Err(Error::AmplitudeCollapse {
            x,
            amplitude: state.a,
        });
    }
    let k2 = 2.0 * mass * (energy - profile.value(x));
    let inv2 = 1.0 / (state.a * state.a);
    Ok(StateDerivative {
        da: state.a_prime,
        da_prime: inv2 / state.a - k2 * state.a,
        dp: inv2,
    })
}

fn rhs_array(
    x: f64,
    y: &[f64; 3],
    energy: f64,
    mass: f64,
    profile: &impl Profile,
) -> Result<[f64; 3]> {
    let d = rhs(
        &AmplitudePhaseState::from_array(*y),
        x,
        energy,
        mass,
        profile,
    )?;
    Ok([d.da, d.da_prime, d.dp])
}

/// Adaptive integration of the amplitude-phase system from `x0` to `x1`.
///
/// The interval is split at the profile's breakpoints. Every accepted step is
/// checked for a positive amplitude and for a phase that moves with `dx`.
pub fn integrate_interval(
    state0: AmplitudePhaseState,
    x0: f64,
    x1: f64,
    energy: f64,
    mass: f64,
    profile: &impl Profile,
    settings: &SolverSettings,
) -> Result<AmplitudePhaseState> {
    if x0 == x1 {
        return Ok(state0);
    }
    if !(state0.a > 0.0) {
        return Err(Error::AmplitudeCollapse {
            x: x0,
            amplitude: state0.a,
        });
    }
    let dir = (x1 - x0).signum();
    let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
    let mut stops: Vec<f64> = profile
        .breakpoints()
        .into_iter()
        .filter(|&b| b > lo && b < hi)
        .collect();
    stops.sort_by(|a, b| (dir * a).total_cmp(&(dir * b)));
    stops.push(x1);

    let tol = settings.tolerance();
    let mut x = x0;
    let mut y = state0.to_array();
    for stop in stops {
        let mut prev_p = y[2];
        y = ode::integrate_adaptive(
            |xx, yy| rhs_array(xx, yy, energy, mass, profile),
            x,
            y,
            stop,
            tol,
            |xx, yy| {
                if !(yy[0] > 0.0) {
                    return Err(Error::AmplitudeCollapse {
                        x: xx,
                        amplitude: yy[0],
                    });
                }
                if dir * (yy[2] - prev_p) < 0.0 {
                    return Err(Error::PhaseNotMonotone { x: xx });
                }
                prev_p = yy[2];
                Ok(())
            },
        )?;
        x = stop;
    }
    Ok(AmplitudePhaseState::from_array(y))
}

/// Record of a chunked tail integration.
#[derive(Debug, Clone, PartialEq)]
pub struct TailTrace {
    /// Magnitude of the phase accumulated from the start to the truncation point.
    pub phase: f64,
    /// Distance covered before convergence.
    pub extent: f64,
    /// Absolute phase gained over each π-long chunk, in order.
    pub increments: Vec<f64>,
    pub final_state: AmplitudePhaseState,
}

/// Converged phase accumulated in a field-free exterior region.
///
/// Integrates with `V = 0` in chunks of length π starting at `x_start` until
/// a chunk adds less than `tail_phase_tol`. For [`Direction::Left`] the
/// magnitude of the (negative) accumulated phase is returned.
pub fn integrate_tail(
    state0: AmplitudePhaseState,
    x_start: f64,
    direction: Direction,
    energy: f64,
    mass: f64,
    settings: &SolverSettings,
) -> Result<f64> {
    trace_tail(state0, x_start, direction, energy, mass, settings).map(|t| t.phase)
}

pub fn trace_tail(
    state0: AmplitudePhaseState,
    x_start: f64,
    direction: Direction,
    energy: f64,
    mass: f64,
    settings: &SolverSettings,
) -> Result<TailTrace> {
    if !(energy < 0.0) {
        return Err(Error::NoBoundTail { energy });
    }
    let step = direction.sign() * PI;
    let mut state = state0;
    let mut x = x_start;
    let mut total = 0.0;
    let mut increments = Vec::new();
    loop {
        let next = integrate_interval(state, x, x + step, energy, mass, &FreeSpace, settings)?;
        let increment = (next.p - state.p).abs();
        total += increment;
        increments.push(increment);
        state = next;
        x += step;
        let extent = (x - x_start).abs();
        if increment < settings.tail_phase_tol {
            return Ok(TailTrace {
                phase: total,
                extent,
                increments,
                final_state: state,
            });
        }
        if extent >= settings.tail_max_extent {
            return Err(Error::TailDivergence {
                extent,
                last_increment: increment,
            });
        }
    }
}

/// States on `steps` uniform steps from `x0` to `x1`.
///
/// Each step is a separate adaptive integration, so the samples carry the
/// full accuracy of `settings` even where the amplitude dips and the phase
/// turns quickly (a fixed-step scheme loses accuracy there).
#[allow(clippy::too_many_arguments)]
pub fn sample_trajectory(
    state0: AmplitudePhaseState,
    x0: f64,
    x1: f64,
    steps: usize,
    energy: f64,
    mass: f64,
    profile: &impl Profile,
    settings: &SolverSettings,
) -> Result<Vec<(f64, AmplitudePhaseState)>> {
    let steps = steps.max(1);
    let h = (x1 - x0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push((x0, state0));
    let mut state = state0;
    for i in 1..=steps {
        let (from, to) = (
            x0 + h * (i - 1) as f64,
            if i == steps { x1 } else { x0 + h * i as f64 },
        );
        state = integrate_interval(state, from, to, energy, mass, profile, settings)?;
        out.push((to, state));
    }
    Ok(out)
}
