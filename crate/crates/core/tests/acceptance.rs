//! Acceptance suite. Each test prints one PASS/FAIL line per criterion; run
//! with `cargo test --test acceptance -- --nocapture --test-threads=1` to
//! see them in order.

mod common;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use common::*;
use multiwell::floquet::{self, bands_between, find_band_edges, ground_band, Band, EdgeScan};
use multiwell::milne::{
    integrate_interval, integrate_tail, sample_trajectory, AmplitudePhaseState, Direction,
    SolverSettings,
};
use multiwell::oracle::{fd_spectrum, richardson, FdGrid};
use multiwell::potential::Profile;
use multiwell::{find_levels, Level, Potential};

const ENERGY_TOL: f64 = 5e-4;
const ORACLE_TOL: f64 = 2e-3;
const RESIDUAL_TOL: f64 = 1e-4;
const CHECKPOINT_SPACING: f64 = 0.02;
/// Difference step relative to the local length scale min(1, A²).
const FD_STEP_SCALE: f64 = 1e-4;
const TAIL_TOL: f64 = 1e-8;
const PARITY_TOL: f64 = 0.999;

fn verdict(id: &str, what: &str, pass: bool) -> bool {
    println!("[{id}] {} {what}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn levels(pot: &Potential) -> Vec<Level> {
    find_levels(pot, &settings(), SCAN_POINTS).unwrap()
}

/// Levels below the top of the higher ground band; everything above belongs
/// to excited bands that are not tabulated.
fn ground_window(pot: &Potential, all: Vec<Level>, bands: &[Band]) -> Vec<Level> {
    let top = bands
        .iter()
        .map(|b| b.upper.energy)
        .fold(f64::NEG_INFINITY, f64::max);
    let gap_above = excited_floor(pot);
    assert!(top < gap_above);
    all.into_iter()
        .filter(|l| l.energy < 0.5 * (top + gap_above))
        .collect()
}

fn ground_window_levels(pot: &Potential, bands: &[Band]) -> Vec<Level> {
    ground_window(pot, levels(pot), bands)
}

fn ground_bands(pot: &Potential) -> Vec<Band> {
    let mut bands = vec![ground_band(pot.v1(), MASS, &settings()).unwrap().unwrap()];
    if pot.v2() != pot.v1() {
        bands.push(ground_band(pot.v2(), MASS, &settings()).unwrap().unwrap());
    }
    bands.sort_by(|a, b| a.lower.energy.total_cmp(&b.lower.energy));
    bands
}

/// Excited bands of one depth up to E = 1, scanned once per depth.
fn excited_bands(depth: f64) -> Vec<Band> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Band>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(bands) = cache.lock().unwrap().get(&depth.to_bits()) {
        return bands.clone();
    }
    let scan = EdgeScan {
        points: 4000,
        ground_only: false,
    };
    let bands: Vec<Band> = bands_between(depth, MASS, depth + 1e-6, 1.0, &settings(), &scan)
        .unwrap()
        .into_iter()
        .skip(1)
        .collect();
    cache.lock().unwrap().insert(depth.to_bits(), bands.clone());
    bands
}

/// Lowest excited-band edge of either depth.
fn excited_floor(pot: &Potential) -> f64 {
    [pot.v1(), pot.v2()]
        .iter()
        .map(|&d| excited_bands(d)[0].lower.energy)
        .fold(f64::INFINITY, f64::min)
}

/// Compares one row of the level table; returns the verdict and the time
/// spent computing levels and ground bands.
fn check_table(id: &str, n: u32) -> (bool, Duration) {
    let (_, symmetric, asymmetric) = TABLE.iter().find(|t| t.0 == n).unwrap();
    let mut all = true;
    let mut compute = Duration::ZERO;
    for (depths, expected, label) in [
        (SYMMETRIC, *symmetric, "symmetric"),
        (ASYMMETRIC, *asymmetric, "asymmetric"),
    ] {
        let pot = potential(depths, n);
        let start = Instant::now();
        let bands = ground_bands(&pot);
        let computed = levels(&pot);
        compute += start.elapsed();
        let found = ground_window(&pot, computed, &bands);
        let count_ok = found.len() == expected.len();
        all &= verdict(
            id,
            &format!(
                "N={n} {label}: {} levels (expected {})",
                found.len(),
                expected.len()
            ),
            count_ok,
        );
        for (level, &want) in found.iter().zip(expected.iter()) {
            let diff = (level.energy - want).abs();
            all &= verdict(
                id,
                &format!(
                    "N={n} {label} j={}: {:.6} vs {want:.4} (|Δ| = {diff:.2e}, tol {ENERGY_TOL:e})",
                    level.index_j, level.energy
                ),
                diff < ENERGY_TOL,
            );
        }
    }
    (all, compute)
}

#[test]
fn ac1_band_edges() {
    let start = Instant::now();
    let mut all = true;
    for (depth, expected) in [(-1.25, EDGES_SHALLOW), (-1.35, EDGES_DEEP)] {
        let edges = find_band_edges(depth, MASS, depth, 0.0, &settings()).unwrap();
        all &= verdict(
            "AC1",
            &format!("v={depth}: {} ground edges", edges.len()),
            edges.len() == 2,
        );
        for (edge, want) in edges.iter().zip(expected) {
            let diff = (edge.energy - want).abs();
            all &= verdict(
                "AC1",
                &format!(
                    "v={depth} edge {:.6} ({:?}) vs {want} (|Δ| = {diff:.2e})",
                    edge.energy, edge.branch
                ),
                diff < ENERGY_TOL,
            );
        }
    }
    let elapsed = start.elapsed();
    all &= verdict(
        "AC1",
        &format!("runtime {elapsed:?} < 5 s"),
        elapsed < Duration::from_secs(5),
    );
    assert!(all);
}

#[test]
fn ac2_table_n2() {
    let (mut all, elapsed) = check_table("AC2", 2);
    all &= verdict(
        "AC2",
        &format!("runtime {elapsed:?} < 10 s"),
        elapsed < Duration::from_secs(10),
    );
    assert!(all);
}

#[test]
fn ac3_table_n4() {
    assert!(check_table("AC3", 4).0);
}

#[test]
fn ac4_table_n6() {
    assert!(check_table("AC4", 6).0);
}

#[test]
fn ac5_band_containment() {
    let gap = (EDGES_DEEP[1], EDGES_SHALLOW[0]);
    let mut all = true;
    for pot in configurations() {
        let bands = ground_bands(&pot);
        let label = format!("({}, {}) N={}", pot.v1(), pot.v2(), pot.n_cells());
        let window = ground_window_levels(&pot, &bands);
        let outside: Vec<f64> = window
            .iter()
            .filter(|l| !bands.iter().any(|b| b.contains(l.energy)))
            .map(|l| l.energy)
            .collect();
        all &= verdict(
            "AC5",
            &format!(
                "{label}: {} levels in ground-band union, outside: {outside:?}",
                window.len()
            ),
            outside.is_empty(),
        );
        if !pot.is_symmetric() {
            let in_gap = levels(&pot)
                .iter()
                .filter(|l| l.energy > gap.0 && l.energy < gap.1)
                .count();
            all &= verdict(
                "AC5",
                &format!("{label}: {in_gap} levels in open gap {gap:?}"),
                in_gap == 0,
            );
        }
        // levels above the ground window sit in excited bands of either depth
        let excited: Vec<Band> = [pot.v1(), pot.v2()]
            .iter()
            .flat_map(|&d| excited_bands(d))
            .collect();
        let stray = levels(&pot)
            .iter()
            .filter(|l| !window.contains(l))
            .filter(|l| !excited.iter().any(|b| b.contains(l.energy)))
            .count();
        all &= verdict(
            "AC5",
            &format!("{label}: {stray} excited levels outside every band"),
            stray == 0,
        );
    }
    assert!(all);
}

#[test]
fn ac6_level_count() {
    let mut all = true;
    let band = ground_band(SYMMETRIC.0, MASS, &settings())
        .unwrap()
        .unwrap();
    for n in [2, 4, 6] {
        let pot = potential(SYMMETRIC, n);
        let inside = levels(&pot)
            .iter()
            .filter(|l| band.contains(l.energy))
            .count();
        all &= verdict(
            "AC6",
            &format!("N={n}: {inside} levels in ground band"),
            inside == n as usize,
        );
    }
    assert!(all);
}

#[test]
fn ac7_oracle_equivalence() {
    let mut all = true;
    for pot in configurations() {
        let label = format!("({}, {}) N={}", pot.v1(), pot.v2(), pot.n_cells());
        let grid = FdGrid::around(&pot, 12.0, 8000);
        let reference = fd_spectrum(&pot, &grid, usize::MAX).unwrap();
        let found = levels(&pot);
        all &= verdict(
            "AC7",
            &format!(
                "{label}: {} amplitude-phase vs {} finite-difference levels",
                found.len(),
                reference.len()
            ),
            found.len() == reference.len(),
        );
        let worst = found
            .iter()
            .zip(&reference)
            .map(|(l, fd)| (l.energy - fd).abs())
            .fold(0.0, f64::max);
        all &= verdict(
            "AC7",
            &format!("{label}: max |ΔE| = {worst:.2e} < {ORACLE_TOL:e}"),
            worst < ORACLE_TOL,
        );
        let c = richardson(&pot, &grid, 0).unwrap();
        all &= verdict(
            "AC7",
            &format!("{label}: convergence order {:.4} in [1.8, 2.2]", c.order),
            (1.8..=2.2).contains(&c.order),
        );
    }
    assert!(all);
}

#[test]
fn ac8_analytic_tail() {
    let mut all = true;
    for kappa in [0.5f64, 1.0, 2.0] {
        let energy = -kappa * kappa / 2.0;
        let phase = integrate_tail(
            AmplitudePhaseState::UNIT,
            0.0,
            Direction::Right,
            energy,
            1.0,
            &settings(),
        )
        .unwrap();
        let expected = (1.0 / kappa).atan();
        let diff = (phase - expected).abs();
        all &= verdict(
            "AC8",
            &format!("κ={kappa}: {phase:.12} vs arctan(1/κ) = {expected:.12} (|Δ| = {diff:.1e})"),
            diff < TAIL_TOL,
        );
    }
    assert!(all);
}

/// Largest relative Milne and Schrödinger residuals from the junction to 3
/// units past the support edge in `direction`.
///
/// At each checkpoint the second derivative is a three-point difference whose
/// step follows the local length scale `A²` of the solution, with the
/// neighbouring states integrated from the checkpoint. Each residual is
/// divided by the size of its equation's largest term, since `A` ranges over
/// several decades along the way.
fn residuals(pot: &Potential, energy: f64, direction: Direction) -> (f64, f64) {
    let fine = SolverSettings {
        rel_tol: 1e-13,
        abs_tol: 1e-14,
        ..SolverSettings::default()
    };
    let end = match direction {
        Direction::Right => pot.support_end() + 3.0,
        Direction::Left => -3.0,
    };
    let steps = ((end - pot.junction()).abs() / CHECKPOINT_SPACING).round() as usize;
    let path = sample_trajectory(
        AmplitudePhaseState::UNIT,
        pot.junction(),
        end,
        steps,
        energy,
        pot.mass(),
        pot,
        &fine,
    )
    .unwrap();
    let wave = |s: &AmplitudePhaseState| s.a * (s.p + 0.3).sin();
    let mut worst = (0.0f64, 0.0f64);
    for &(x, s) in &path[1..path.len() - 1] {
        let h = FD_STEP_SCALE * (s.a * s.a).min(1.0);
        let step = |to: f64| integrate_interval(s, x, to, energy, pot.mass(), pot, &fine).unwrap();
        let (lo, hi) = (step(x - h), step(x + h));
        let k2 = 2.0 * pot.mass() * (energy - pot.value(x));
        let amp_dd = second_difference(&[lo.a, s.a, hi.a], h)[0];
        let wave_dd = second_difference(&[wave(&lo), wave(&s), wave(&hi)], h)[0];
        let inv3 = s.a.powi(-3);
        let milne = (amp_dd + k2 * s.a - inv3).abs() / (amp_dd.abs() + (k2 * s.a).abs() + inv3);
        let scale = s.a * (1.0 + k2.abs() + s.a.powi(-4));
        let schrodinger = (wave_dd + k2 * wave(&s)).abs() / scale;
        worst = (worst.0.max(milne), worst.1.max(schrodinger));
    }
    worst
}

#[test]
fn ac9_residuals() {
    let mut all = true;
    for pot in configurations() {
        let label = format!("({}, {}) N={}", pot.v1(), pot.v2(), pot.n_cells());
        let mut worst = (0.0f64, 0.0f64);
        for level in levels(&pot) {
            for direction in [Direction::Left, Direction::Right] {
                let r = residuals(&pot, level.energy, direction);
                worst = (worst.0.max(r.0), worst.1.max(r.1));
            }
        }
        all &= verdict(
            "AC9",
            &format!("{label}: Milne residual {:.2e}", worst.0),
            worst.0 < RESIDUAL_TOL,
        );
        all &= verdict(
            "AC9",
            &format!("{label}: Schrödinger residual {:.2e}", worst.1),
            worst.1 < RESIDUAL_TOL,
        );
    }
    assert!(all);
}

#[test]
fn ac10_parity() {
    let mut all = true;
    for n in [2, 4, 6] {
        let pot = potential(SYMMETRIC, n);
        for level in levels(&pot) {
            let (s, c) = (level.alpha.sin().abs(), level.alpha.cos().abs());
            all &= verdict(
                "AC10",
                &format!(
                    "N={n} j={}: |sin α| = {s:.6}, |cos α| = {c:.6}",
                    level.index_j
                ),
                s > PARITY_TOL || c > PARITY_TOL,
            );
        }
    }
    assert!(all);
}

#[test]
fn ground_bands_do_not_overlap() {
    let deep = ground_band(-1.35, MASS, &settings()).unwrap().unwrap();
    let shallow = ground_band(-1.25, MASS, &settings()).unwrap().unwrap();
    assert!(deep.upper.energy < shallow.lower.energy);
    assert!(floquet::classify(-0.80, &[deep, shallow]) == floquet::Classification::InGap);
    assert!((shallow.width() - (EDGES_SHALLOW[1] - EDGES_SHALLOW[0])).abs() < 1e-3);
    let _ = PI;
}
