//! The two-segment equiperiodic well configuration.
//!
//! Left segment `[0, Nπ/2]` carries `v1·sin²x`, right segment `[Nπ/2, Nπ]`
//! carries `v2·sin²x`; the potential vanishes everywhere else. `N` is even so
//! both segments hold `N/2` whole cells and the junction sits on a zero of
//! `sin²`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A potential energy profile `V(x)` seen by the amplitude-phase integrator.
pub trait Profile: Sync {
    fn value(&self, x: f64) -> f64;

    /// Points where the analytic form of `V` changes. Integrations are split
    /// there so the adaptive controller never steps across a kink.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    v1: f64,
    v2: f64,
    n_cells: u32,
    mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Segment {
    ExteriorLeft,
    LeftWells,
    RightWells,
    ExteriorRight,
}

impl Potential {
    pub fn new(v1: f64, v2: f64, n_cells: u32, mass: f64) -> Result<Self> {
        if !v1.is_finite() || !v2.is_finite() {
            return Err(Error::InvalidPotential(format!(
                "depths must be finite, got v1 = {v1}, v2 = {v2}"
            )));
        }
        if n_cells < 2 || !n_cells.is_multiple_of(2) {
            return Err(Error::InvalidPotential(format!(
                "cell count must be even and at least 2, got {n_cells}"
            )));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidPotential(format!(
                "mass must be positive, got {mass}"
            )));
        }
        Ok(Self {
            v1,
            v2,
            n_cells,
            mass,
        })
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    pub fn n_cells(&self) -> u32 {
        self.n_cells
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Deepest of the two depth parameters, the floor of the bound-state window.
    pub fn min_depth(&self) -> f64 {
        self.v1.min(self.v2)
    }

    pub fn is_symmetric(&self) -> bool {
        self.v1 == self.v2
    }

    /// `Nπ/2`, the point joining the two multi-well segments.
    pub fn junction(&self) -> f64 {
        f64::from(self.n_cells) * PI / 2.0
    }

    /// `Nπ`, the right edge of the support.
    pub fn support_end(&self) -> f64 {
        f64::from(self.n_cells) * PI
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self.segment_of(x) {
            Segment::LeftWells => self.v1 * sin_squared(x),
            Segment::RightWells => self.v2 * sin_squared(x),
            Segment::ExteriorLeft | Segment::ExteriorRight => 0.0,
        }
    }

    /// Boundary points belong to the segment on their right, except `Nπ`
    /// which closes the right wells.
    pub fn segment_of(&self, x: f64) -> Segment {
        if x < 0.0 {
            Segment::ExteriorLeft
        } else if x < self.junction() {
            Segment::LeftWells
        } else if x <= self.support_end() {
            Segment::RightWells
        } else {
            Segment::ExteriorRight
        }
    }
}

impl Profile for Potential {
    fn value(&self, x: f64) -> f64 {
        self.evaluate(x)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0, self.junction(), self.support_end()]
    }
}

/// The infinitely repeated cell `depth·sin²x`, used for single-cell Floquet
/// quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicWells {
    pub depth: f64,
}

impl Profile for PeriodicWells {
    fn value(&self, x: f64) -> f64 {
        self.depth * sin_squared(x)
    }
}

/// `V ≡ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FreeSpace;

impl Profile for FreeSpace {
    fn value(&self, _x: f64) -> f64 {
        0.0
    }
}

fn sin_squared(x: f64) -> f64 {
    let s = x.sin();
    s * s
}
