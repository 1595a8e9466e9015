//! Bound states of two joined equiperiodic multi-well potentials.
//!
//! The potential is `v1·sin²x` on `[0, Nπ/2]`, `v2·sin²x` on `[Nπ/2, Nπ]` and
//! zero outside. Levels come from the amplitude-phase (Milne) representation
//! of the Schrödinger equation `F'' + 2m(E − V)F = 0` and a Bohr-Sommerfeld
//! type phase condition that is exact; band edges of the two underlying
//! periodic potentials come from single-cell integrations. An independent
//! finite-difference solver checks the levels.
//!
//! ```no_run
//! use multiwell::{find_levels, Potential, SolverSettings};
//!
//! let pot = Potential::new(-1.35, -1.25, 4, 2.0)?;
//! for level in find_levels(&pot, &SolverSettings::default(), 400)? {
//!     println!("{} {:.4}", level.index_j, level.energy);
//! }
//! # Ok::<(), multiwell::Error>(())
//! ```

// `!(x > 0.0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod floquet;
pub mod milne;
pub mod ode;
pub mod oracle;
pub mod potential;
pub mod report;
pub mod spectrum;

pub use error::{Error, ErrorCategory, Result};
pub use floquet::{
    bands_from_edges, cell_quantities, classify, find_band_edges, ground_band, Band, BandEdge,
    Branch, Classification,
};
pub use milne::{
    integrate_interval, integrate_tail, AmplitudePhaseState, Direction, SolverSettings,
};
pub use oracle::{fd_spectrum, FdGrid};
pub use potential::{Potential, Profile, Segment};
pub use spectrum::{find_levels, total_phase, wavefunction, Level};
