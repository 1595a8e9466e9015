//! Finite-difference cross-check of the bound-state energies.
//!
//! `−F''/(2m) + V·F = E·F` is discretized with the three-point stencil on a
//! uniform grid with Dirichlet ends. The resulting symmetric tridiagonal
//! matrix is diagonalized one eigenvalue at a time with Sturm-sequence
//! counting and bisection, so no dense eigensolver is involved.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::Potential;

/// Exterior padding on each side of the support.
pub const DEFAULT_PADDING: f64 = 12.0;
/// Grid size from which results are considered acceptance grade.
pub const ACCEPTANCE_POINTS: usize = 1000;
/// Allowed move of the lowest eigenvalue when the box is enlarged.
pub const BOX_SHIFT_TOL: f64 = 1e-6;
const BOX_EXTENSION: f64 = 4.0;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    pub x_left: f64,
    pub x_right: f64,
    /// Interior nodes; the two Dirichlet end points are not counted.
    pub n_points: usize,
}

impl FdGrid {
    /// Box `[−padding, Nπ + padding]` with `n_points` interior nodes.
    pub fn around(pot: &Potential, padding: f64, n_points: usize) -> Self {
        Self {
            x_left: -padding,
            x_right: pot.support_end() + padding,
            n_points,
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_right - self.x_left) / (self.n_points + 1) as f64
    }

    /// Same box with the spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }

    /// Box extended by `extra` on both sides at (nearly) the same spacing.
    fn extended(&self, extra: f64) -> Self {
        let added = (extra / self.spacing()).round() as usize;
        let h = self.spacing();
        Self {
            x_left: self.x_left - added as f64 * h,
            x_right: self.x_right + added as f64 * h,
            n_points: self.n_points + 2 * added,
        }
    }

    pub fn validate(&self, pot: &Potential) -> Result<()> {
        if self.n_points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 interior points, got {}",
                self.n_points
            )));
        }
        if !(self.x_left <= 0.0 && self.x_right >= pot.support_end()) {
            return Err(Error::InvalidGrid(format!(
                "box [{}, {}] does not contain the support [0, {}]",
                self.x_left,
                self.x_right,
                pot.support_end()
            )));
        }
        Ok(())
    }

    fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..=self.n_points).map(move |i| self.x_left + h * i as f64)
    }
}

/// Symmetric tridiagonal matrix stored as diagonal and sub-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1));
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let pivmin =
            f64::MIN_POSITIVE.sqrt() * self.off.iter().map(|e| e * e).fold(1.0f64, f64::max);
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = self.diag[i] - lambda - coupling;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection inside `[lo, hi]`.
    pub fn eigenvalue(&self, k: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        for _ in 0..200 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Three-point discretization of `−F''/(2m) + V·F`.
pub fn hamiltonian(pot: &Potential, grid: &FdGrid) -> Tridiagonal {
    let h = grid.spacing();
    let kinetic = 1.0 / (2.0 * pot.mass() * h * h);
    let diag: Vec<f64> = grid
        .nodes()
        .map(|x| 2.0 * kinetic + pot.evaluate(x))
        .collect();
    let off = vec![-kinetic; grid.n_points.saturating_sub(1)];
    Tridiagonal::new(diag, off)
}

fn negative_eigenvalues(matrix: &Tridiagonal, k_max: usize) -> Vec<f64> {
    let count = matrix.count_below(0.0).min(k_max);
    let (lo, _) = matrix.gershgorin();
    (0..count)
        .map(|k| matrix.eigenvalue(k, lo, 0.0, BISECTION_TOL))
        .collect()
}

/// Up to `k_max` negative eigenvalues in ascending order, without the box
/// check of [`fd_spectrum`].
pub fn fd_eigenvalues(pot: &Potential, grid: &FdGrid, k_max: usize) -> Vec<f64> {
    negative_eigenvalues(&hamiltonian(pot, grid), k_max)
}

/// Up to `k_max` negative eigenvalues in ascending order.
///
/// The box is checked by enlarging it: if the lowest eigenvalue moves by more
/// than [`BOX_SHIFT_TOL`] the lowest eigenfunction has not decayed at the
/// walls and [`Error::BoxTooSmall`] is returned.
pub fn fd_spectrum(pot: &Potential, grid: &FdGrid, k_max: usize) -> Result<Vec<f64>> {
    grid.validate(pot)?;
    let values = negative_eigenvalues(&hamiltonian(pot, grid), k_max);
    if let Some(&lowest) = values.first() {
        let wide = grid.extended(BOX_EXTENSION);
        let wide_lowest = negative_eigenvalues(&hamiltonian(pot, &wide), 1)[0];
        let shift = (wide_lowest - lowest).abs();
        if shift > BOX_SHIFT_TOL {
            return Err(Error::BoxTooSmall { shift });
        }
    }
    Ok(values)
}

/// Eigenvalue `index` on three successively halved grids and the observed
/// order of convergence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub index: usize,
    pub spacings: [f64; 3],
    pub energies: [f64; 3],
    pub order: f64,
}

pub fn richardson(pot: &Potential, grid: &FdGrid, index: usize) -> Result<Convergence> {
    grid.validate(pot)?;
    let grids = [*grid, grid.refined(), grid.refined().refined()];
    let mut energies = [0.0; 3];
    for (slot, g) in energies.iter_mut().zip(&grids) {
        let values = negative_eigenvalues(&hamiltonian(pot, g), index + 1);
        *slot = *values.get(index).ok_or_else(|| {
            Error::InvalidGrid(format!("no negative eigenvalue with index {index}"))
        })?;
    }
    let order = ((energies[0] - energies[1]) / (energies[1] - energies[2]))
        .abs()
        .log2();
    Ok(Convergence {
        index,
        spacings: grids.map(|g| g.spacing()),
        energies,
        order,
    })
}
