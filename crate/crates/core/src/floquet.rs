//! Single-cell Floquet/Bloch quantities and band edges.
//!
//! Integrating the amplitude-phase system across one cell of `v·sin²x` from
//! `A = 1, A' = 0, p = 0` gives `u = A(x_b + π)` and `γ = p(x_b + π)`. Since
//! the cell is symmetric, `D(E) = u·cos γ` is the half-trace of the monodromy
//! matrix: bands are where `|D| < 1`, edges where `D = ±1`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milne::{integrate_interval, AmplitudePhaseState, SolverSettings};
use crate::potential::{PeriodicWells, Profile};

pub const DEFAULT_EDGE_SCAN_POINTS: usize = 2000;
pub const EDGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `u·cos γ = +1`
    Plus,
    /// `u·cos γ = −1`
    Minus,
}

impl Branch {
    pub fn value(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdge {
    pub energy: f64,
    pub branch: Branch,
    pub well_depth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lower: BandEdge,
    pub upper: BandEdge,
}

impl Band {
    pub fn contains(&self, energy: f64) -> bool {
        energy >= self.lower.energy && energy <= self.upper.energy
    }

    pub fn width(&self) -> f64 {
        self.upper.energy - self.lower.energy
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellQuantities {
    pub u: f64,
    pub gamma: f64,
}

impl CellQuantities {
    pub fn discriminant(&self) -> f64 {
        self.u * self.gamma.cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeScan {
    pub points: usize,
    /// Stop after the lowest band, i.e. the first two edges.
    pub ground_only: bool,
}

impl Default for EdgeScan {
    fn default() -> Self {
        Self {
            points: DEFAULT_EDGE_SCAN_POINTS,
            ground_only: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "band")]
pub enum Classification {
    InBand(usize),
    InGap,
    BelowAll,
    AboveAll,
}

pub fn cell_quantities(
    well_depth: f64,
    energy: f64,
    mass: f64,
    settings: &SolverSettings,
) -> Result<CellQuantities> {
    cell_quantities_at(
        &PeriodicWells { depth: well_depth },
        0.0,
        energy,
        mass,
        settings,
    )
}

/// Same as [`cell_quantities`] for an arbitrary profile and cell start `x_b`.
pub fn cell_quantities_at(
    profile: &impl Profile,
    x_b: f64,
    energy: f64,
    mass: f64,
    settings: &SolverSettings,
) -> Result<CellQuantities> {
    if !(mass > 0.0) {
        return Err(Error::InvalidPotential(format!(
            "mass must be positive, got {mass}"
        )));
    }
    let end = integrate_interval(
        AmplitudePhaseState::UNIT,
        x_b,
        x_b + PI,
        energy,
        mass,
        profile,
        settings,
    )?;
    Ok(CellQuantities {
        u: end.a,
        gamma: end.p,
    })
}

fn discriminant(depth: f64, energy: f64, mass: f64, settings: &SolverSettings) -> Result<f64> {
    cell_quantities(depth, energy, mass, settings).map(|c| c.discriminant())
}

/// Ground-band edges of `well_depth·sin²x` in `[e_min, e_max]`, using the
/// default scan.
pub fn find_band_edges(
    well_depth: f64,
    mass: f64,
    e_min: f64,
    e_max: f64,
    settings: &SolverSettings,
) -> Result<Vec<BandEdge>> {
    find_band_edges_with(
        well_depth,
        mass,
        e_min,
        e_max,
        settings,
        &EdgeScan::default(),
    )
}

pub fn find_band_edges_with(
    well_depth: f64,
    mass: f64,
    e_min: f64,
    e_max: f64,
    settings: &SolverSettings,
    scan: &EdgeScan,
) -> Result<Vec<BandEdge>> {
    settings.validate()?;
    if !(e_min < e_max) {
        return Err(Error::InvalidSettings(format!(
            "empty energy range [{e_min}, {e_max}]"
        )));
    }
    if scan.points < 2 {
        return Err(Error::InvalidSettings(
            "edge scan needs at least 2 points".into(),
        ));
    }
    let step = (e_max - e_min) / (scan.points - 1) as f64;
    let energies: Vec<f64> = (0..scan.points)
        .map(|i| {
            if i + 1 == scan.points {
                e_max
            } else {
                e_min + step * i as f64
            }
        })
        .collect();
    let values: Vec<f64> = energies
        .par_iter()
        .map(|&e| discriminant(well_depth, e, mass, settings))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for i in 0..scan.points - 1 {
        let mut here = Vec::new();
        for branch in [Branch::Plus, Branch::Minus] {
            let b = branch.value();
            if (values[i] - b) * (values[i + 1] - b) < 0.0 || values[i + 1] == b {
                here.push((branch, energies[i], energies[i + 1]));
            }
        }
        if here.len() > 1 {
            return Err(Error::Resolution {
                lower: energies[i],
                upper: energies[i + 1],
                crossings: here.len(),
            });
        }
        brackets.extend(here);
        if scan.ground_only && brackets.len() >= 2 {
            break;
        }
    }

    let mut edges: Vec<BandEdge> = brackets
        .par_iter()
        .map(|&(branch, lo, hi)| {
            let energy = bisect(
                |e| discriminant(well_depth, e, mass, settings).map(|d| d - branch.value()),
                lo,
                hi,
            )?;
            Ok(BandEdge {
                energy,
                branch,
                well_depth,
            })
        })
        .collect::<Result<_>>()?;
    edges.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(edges)
}

fn bisect(mut f: impl FnMut(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    let lo_negative = f(lo)? < 0.0;
    while hi - lo > EDGE_TOL {
        let mid = 0.5 * (lo + hi);
        let v = f(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Pairs consecutive edges into bands, keeping only pairs whose interior has
/// `|D| < 1`.
pub fn bands_from_edges(
    edges: &[BandEdge],
    mass: f64,
    settings: &SolverSettings,
) -> Result<Vec<Band>> {
    let mut bands = Vec::new();
    for pair in edges.windows(2) {
        let (lower, upper) = (pair[0], pair[1]);
        if lower.well_depth != upper.well_depth {
            continue;
        }
        let mid = 0.5 * (lower.energy + upper.energy);
        if discriminant(lower.well_depth, mid, mass, settings)?.abs() < 1.0 {
            bands.push(Band { lower, upper });
        }
    }
    Ok(bands)
}

/// The lowest band of `well_depth·sin²x` below zero energy, if any.
pub fn ground_band(well_depth: f64, mass: f64, settings: &SolverSettings) -> Result<Option<Band>> {
    let e_min = well_depth.min(0.0) + 1e-6;
    let e_max = -1e-6;
    if e_min >= e_max {
        return Ok(None);
    }
    Ok(bands_between(
        well_depth,
        mass,
        e_min,
        e_max,
        settings,
        &EdgeScan::default(),
    )?
    .into_iter()
    .next())
}

/// Every complete band of `well_depth·sin²x` inside `[e_min, e_max]`
/// resolved by `scan`.
pub fn bands_between(
    well_depth: f64,
    mass: f64,
    e_min: f64,
    e_max: f64,
    settings: &SolverSettings,
    scan: &EdgeScan,
) -> Result<Vec<Band>> {
    let edges = find_band_edges_with(well_depth, mass, e_min, e_max, settings, scan)?;
    bands_from_edges(&edges, mass, settings)
}

/// Locates `energy` against closed band intervals sorted by energy.
pub fn classify(energy: f64, bands: &[Band]) -> Classification {
    if let Some(i) = bands.iter().position(|b| b.contains(energy)) {
        return Classification::InBand(i);
    }
    match (bands.first(), bands.last()) {
        (Some(first), _) if energy < first.lower.energy => Classification::BelowAll,
        (_, Some(last)) if energy > last.upper.energy => Classification::AboveAll,
        (None, None) => Classification::AboveAll,
        _ => Classification::InGap,
    }
}
