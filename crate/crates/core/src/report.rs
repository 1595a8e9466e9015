//! Run configuration and the reports behind the `multiwell` commands.
//!
//! Every command is a plain function from a [`RunConfig`] (plus a few
//! command-specific options) to a serializable report. Reports render to CSV
//! with a fixed column order and a header row, or to JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::{self, classify, Band, Branch, Classification, EdgeScan};
use crate::milne::SolverSettings;
use crate::oracle::{self, Convergence, FdGrid};
use crate::potential::Potential;
use crate::spectrum::{self, find_levels, wavefunction, Level};

/// Mass used when a configuration does not set one. The tabulated double,
/// quadruple and sextuple well levels are obtained with this value.
pub const DEFAULT_MASS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

fn default_mass() -> f64 {
    DEFAULT_MASS
}
fn default_rel_tol() -> f64 {
    SolverSettings::default().rel_tol
}
fn default_abs_tol() -> f64 {
    SolverSettings::default().abs_tol
}
fn default_tail_phase_tol() -> f64 {
    SolverSettings::default().tail_phase_tol
}
fn default_scan_points() -> usize {
    spectrum::DEFAULT_SCAN_POINTS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub v1: f64,
    pub v2: f64,
    pub n_cells: u32,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_tail_phase_tol")]
    pub tail_phase_tol: f64,
    #[serde(default = "default_scan_points")]
    pub scan_points: usize,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(v1: f64, v2: f64, n_cells: u32) -> Self {
        Self {
            v1,
            v2,
            n_cells,
            mass: DEFAULT_MASS,
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            tail_phase_tol: default_tail_phase_tol(),
            scan_points: default_scan_points(),
            format: OutputFormat::Csv,
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.potential()?;
        self.settings().validate()?;
        if self.scan_points < spectrum::MIN_SCAN_POINTS {
            return Err(Error::Config(format!(
                "scan_points must be at least {}, got {}",
                spectrum::MIN_SCAN_POINTS,
                self.scan_points
            )));
        }
        Ok(())
    }

    pub fn potential(&self) -> Result<Potential> {
        self.potential_with_cells(self.n_cells)
    }

    fn potential_with_cells(&self, n_cells: u32) -> Result<Potential> {
        Potential::new(self.v1, self.v2, n_cells, self.mass)
    }

    pub fn settings(&self) -> SolverSettings {
        SolverSettings {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            tail_phase_tol: self.tail_phase_tol,
            ..SolverSettings::default()
        }
    }
}

/// How numbers are printed in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CsvStyle {
    /// Round energies to four decimals instead of ten significant digits.
    pub four_decimals: bool,
}

impl CsvStyle {
    fn energy(&self, value: f64) -> String {
        if self.four_decimals {
            format!("{value:.4}")
        } else {
            significant(value)
        }
    }
}

/// Ten significant digits in positional notation.
pub fn significant(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

fn branch_name(branch: Branch) -> &'static str {
    match branch {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub band_index: usize,
    pub well_depth: f64,
    pub lower: f64,
    pub lower_branch: Branch,
    pub upper: f64,
    pub upper_branch: Branch,
}

impl BandRow {
    fn band(&self) -> Band {
        let edge = |energy, branch| floquet::BandEdge {
            energy,
            branch,
            well_depth: self.well_depth,
        };
        Band {
            lower: edge(self.lower, self.lower_branch),
            upper: edge(self.upper, self.upper_branch),
        }
    }
}

/// Bands of both depth parameters, ascending, one set per distinct depth.
pub fn depth_bands(
    v1: f64,
    v2: f64,
    mass: f64,
    settings: &SolverSettings,
    all_bands: bool,
) -> Result<Vec<BandRow>> {
    let mut depths = vec![v1];
    if v2 != v1 {
        depths.push(v2);
    }
    let mut bands = Vec::new();
    for depth in depths {
        if all_bands {
            // excited bands of interest straddle E = 0, so scan past it
            let scan = EdgeScan {
                points: 4000,
                ground_only: false,
            };
            let (e_min, e_max) = (depth.min(0.0) + 1e-6, depth.abs() + 1.0);
            bands.extend(floquet::bands_between(
                depth, mass, e_min, e_max, settings, &scan,
            )?);
        } else {
            bands.extend(floquet::ground_band(depth, mass, settings)?);
        }
    }
    bands.sort_by(|a, b| a.lower.energy.total_cmp(&b.lower.energy));
    Ok(bands
        .into_iter()
        .enumerate()
        .map(|(band_index, b)| BandRow {
            band_index,
            well_depth: b.lower.well_depth,
            lower: b.lower.energy,
            lower_branch: b.lower.branch,
            upper: b.upper.energy,
            upper_branch: b.upper.branch,
        })
        .collect())
}

fn band_index_of(energy: f64, bands: &[BandRow]) -> Option<usize> {
    let plain: Vec<Band> = bands.iter().map(BandRow::band).collect();
    match classify(energy, &plain) {
        Classification::InBand(i) => Some(bands[i].band_index),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub j: usize,
    pub energy: f64,
    pub band_index: Option<usize>,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub v1: f64,
    pub v2: f64,
    pub n_cells: u32,
    pub mass: f64,
    pub bands: Vec<BandRow>,
    pub levels: Vec<LevelRow>,
}

fn level_rows(levels: &[Level], bands: &[BandRow], all_bands: bool) -> Vec<LevelRow> {
    levels
        .iter()
        .map(|l| LevelRow {
            j: l.index_j,
            energy: l.energy,
            band_index: band_index_of(l.energy, bands),
            alpha: l.alpha,
            beta: l.beta,
        })
        .filter(|row| all_bands || row.band_index.is_some())
        .collect()
}

/// Levels plus the bands of both depths. Unless `all_bands` is set only the
/// ground band of each depth is computed and levels outside them are dropped.
pub fn run_levels(config: &RunConfig, all_bands: bool) -> Result<LevelReport> {
    config.validate()?;
    let pot = config.potential()?;
    let settings = config.settings();
    let levels = find_levels(&pot, &settings, config.scan_points)?;
    let bands = depth_bands(config.v1, config.v2, config.mass, &settings, all_bands)?;
    Ok(LevelReport {
        v1: config.v1,
        v2: config.v2,
        n_cells: config.n_cells,
        mass: config.mass,
        levels: level_rows(&levels, &bands, all_bands),
        bands,
    })
}

impl LevelReport {
    /// Table from the highest energy down: band edges bracket the levels of
    /// their band.
    pub fn to_csv(&self, style: CsvStyle) -> String {
        let mut rows: Vec<(f64, String)> = Vec::new();
        for b in &self.bands {
            for (energy, branch) in [(b.upper, b.upper_branch), (b.lower, b.lower_branch)] {
                rows.push((
                    energy,
                    format!(
                        "edge,,{},{},{},{},,",
                        style.energy(energy),
                        b.band_index,
                        significant(b.well_depth),
                        branch_name(branch)
                    ),
                ));
            }
        }
        for l in &self.levels {
            let depth = l
                .band_index
                .and_then(|i| self.bands.iter().find(|b| b.band_index == i))
                .map(|b| significant(b.well_depth))
                .unwrap_or_default();
            rows.push((
                l.energy,
                format!(
                    "level,{},{},{},{},,{},{}",
                    l.j,
                    style.energy(l.energy),
                    l.band_index.map(|i| i.to_string()).unwrap_or_default(),
                    depth,
                    significant(l.alpha),
                    significant(l.beta)
                ),
            ));
        }
        rows.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut out = String::from("kind,j,energy,band_index,well_depth,branch,alpha,beta\n");
        for (_, line) in rows {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    pub mass: f64,
    pub bands: Vec<BandRow>,
}

pub fn run_bands(config: &RunConfig, all_bands: bool) -> Result<BandReport> {
    config.validate()?;
    let bands = depth_bands(
        config.v1,
        config.v2,
        config.mass,
        &config.settings(),
        all_bands,
    )?;
    Ok(BandReport {
        mass: config.mass,
        bands,
    })
}

fn edges_csv(bands: &[BandRow], style: CsvStyle) -> String {
    let mut out = String::from("band_index,well_depth,edge,energy,branch\n");
    for b in bands {
        for (name, energy, branch) in [
            ("lower", b.lower, b.lower_branch),
            ("upper", b.upper, b.upper_branch),
        ] {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                b.band_index,
                significant(b.well_depth),
                name,
                style.energy(energy),
                branch_name(branch)
            );
        }
    }
    out
}

impl BandReport {
    pub fn to_csv(&self, style: CsvStyle) -> String {
        edges_csv(&self.bands, style)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepLevelRow {
    pub n_cells: u32,
    pub j: usize,
    pub energy: f64,
    pub band_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub v1: f64,
    pub v2: f64,
    pub mass: f64,
    pub n_values: Vec<u32>,
    pub bands: Vec<BandRow>,
    pub levels: Vec<SweepLevelRow>,
}

/// Levels for every cell count in `n_values` against one shared set of bands.
pub fn run_sweep(config: &RunConfig, n_values: &[u32], all_bands: bool) -> Result<SweepReport> {
    config.validate()?;
    for &n in n_values {
        config
            .potential_with_cells(n)
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let settings = config.settings();
    let bands = if n_values.is_empty() {
        Vec::new()
    } else {
        depth_bands(config.v1, config.v2, config.mass, &settings, all_bands)?
    };
    let per_n: Vec<Vec<SweepLevelRow>> = n_values
        .par_iter()
        .map(|&n| {
            let pot = config.potential_with_cells(n)?;
            let levels = find_levels(&pot, &settings, config.scan_points)?;
            Ok(level_rows(&levels, &bands, all_bands)
                .into_iter()
                .map(|row| SweepLevelRow {
                    n_cells: n,
                    j: row.j,
                    energy: row.energy,
                    band_index: row.band_index,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        v1: config.v1,
        v2: config.v2,
        mass: config.mass,
        n_values: n_values.to_vec(),
        bands,
        levels: per_n.into_iter().flatten().collect(),
    })
}

impl SweepReport {
    /// Long-form `(N, j, E_j, band_index)` table.
    pub fn levels_csv(&self, style: CsvStyle) -> String {
        let mut out = String::from("n_cells,j,energy,band_index\n");
        for row in &self.levels {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                row.n_cells,
                row.j,
                style.energy(row.energy),
                row.band_index.map(|i| i.to_string()).unwrap_or_default()
            );
        }
        out
    }

    pub fn edges_csv(&self, style: CsvStyle) -> String {
        edges_csv(&self.bands, style)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveOptions {
    pub level: usize,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub samples: usize,
}

impl Default for WaveOptions {
    fn default() -> Self {
        Self {
            level: 0,
            x_min: None,
            x_max: None,
            samples: 801,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionReport {
    pub level: Level,
    pub points: Vec<(f64, f64)>,
}

pub fn run_wavefunction(config: &RunConfig, options: &WaveOptions) -> Result<WavefunctionReport> {
    config.validate()?;
    let pot = config.potential()?;
    let settings = config.settings();
    let levels = find_levels(&pot, &settings, config.scan_points)?;
    let level = *levels.get(options.level).ok_or_else(|| {
        Error::Config(format!(
            "level {} requested but only {} levels exist",
            options.level,
            levels.len()
        ))
    })?;
    let x_min = options.x_min.unwrap_or(-6.0);
    let x_max = options.x_max.unwrap_or(pot.support_end() + 6.0);
    if !(x_min < x_max) || options.samples < 2 {
        return Err(Error::Config(format!(
            "bad sampling range [{x_min}, {x_max}] with {} samples",
            options.samples
        )));
    }
    let step = (x_max - x_min) / (options.samples - 1) as f64;
    let grid: Vec<f64> = (0..options.samples)
        .map(|i| x_min + step * i as f64)
        .collect();
    let points = wavefunction(&level, &pot, &settings, &grid)?;
    Ok(WavefunctionReport { level, points })
}

impl WavefunctionReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,psi\n");
        for (x, f) in &self.points {
            let _ = writeln!(out, "{},{}", significant(*x), significant(*f));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub n_points: usize,
    pub padding: f64,
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_points: 8000,
            padding: oracle::DEFAULT_PADDING,
            tolerance: 2e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub j: usize,
    pub amplitude_phase: f64,
    pub finite_difference: f64,
    pub abs_diff: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub grid: FdGrid,
    pub tolerance: f64,
    pub amplitude_phase_count: usize,
    pub finite_difference_count: usize,
    pub rows: Vec<VerifyRow>,
    pub convergence: Option<Convergence>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

/// Runs both solvers on the same potential and compares level by level.
///
/// An undersized box or a convergence order outside `[1.8, 2.2]` is reported
/// as a warning; only a count mismatch or a difference above the tolerance
/// fails the check.
pub fn run_verify(config: &RunConfig, options: &VerifyOptions) -> Result<VerifyReport> {
    config.validate()?;
    let pot = config.potential()?;
    let settings = config.settings();
    let levels = find_levels(&pot, &settings, config.scan_points)?;
    let grid = FdGrid::around(&pot, options.padding, options.n_points);
    grid.validate(&pot)?;

    let mut warnings = Vec::new();
    if options.n_points < oracle::ACCEPTANCE_POINTS {
        warnings.push(format!(
            "oracle grid has {} points, below the {} needed for acceptance-grade runs",
            options.n_points,
            oracle::ACCEPTANCE_POINTS
        ));
    }
    let reference = match oracle::fd_spectrum(&pot, &grid, usize::MAX) {
        Ok(values) => values,
        Err(Error::BoxTooSmall { shift }) => {
            warnings.push(format!(
                "box too small: lowest eigenvalue moved by {shift:e} when padding was increased"
            ));
            oracle::fd_eigenvalues(&pot, &grid, usize::MAX)
        }
        Err(e) => return Err(e),
    };
    let convergence = if reference.is_empty() {
        None
    } else {
        let c = oracle::richardson(&pot, &grid, 0)?;
        if !(1.8..=2.2).contains(&c.order) {
            warnings.push(format!(
                "observed convergence order {:.3} outside [1.8, 2.2]",
                c.order
            ));
        }
        Some(c)
    };

    let rows: Vec<VerifyRow> = levels
        .iter()
        .zip(&reference)
        .map(|(level, &fd)| {
            let abs_diff = (level.energy - fd).abs();
            VerifyRow {
                j: level.index_j,
                amplitude_phase: level.energy,
                finite_difference: fd,
                abs_diff,
                within_tolerance: abs_diff < options.tolerance,
            }
        })
        .collect();
    let passed = levels.len() == reference.len() && rows.iter().all(|r| r.within_tolerance);
    Ok(VerifyReport {
        grid,
        tolerance: options.tolerance,
        amplitude_phase_count: levels.len(),
        finite_difference_count: reference.len(),
        rows,
        convergence,
        warnings,
        passed,
    })
}

impl VerifyReport {
    pub fn to_csv(&self, style: CsvStyle) -> String {
        let mut out = String::from(
            "j,amplitude_phase,finite_difference,abs_diff,tolerance,n_points,x_left,x_right,pass\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e},{},{},{},{}",
                r.j,
                style.energy(r.amplitude_phase),
                style.energy(r.finite_difference),
                r.abs_diff,
                self.tolerance,
                self.grid.n_points,
                significant(self.grid.x_left),
                significant(self.grid.x_right),
                r.within_tolerance
            );
        }
        out
    }
}
