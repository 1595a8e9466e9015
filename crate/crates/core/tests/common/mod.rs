#![allow(dead_code)]

use multiwell::{Potential, SolverSettings};

/// Mass at which the tabulated levels are reproduced.
pub const MASS: f64 = 2.0;
pub const SYMMETRIC: (f64, f64) = (-1.25, -1.25);
pub const ASYMMETRIC: (f64, f64) = (-1.35, -1.25);
pub const SCAN_POINTS: usize = 400;

/// Reference levels to four decimals, ascending in energy, for N = 2, 4, 6.
pub const TABLE: [(u32, &[f64], &[f64]); 3] = [
    (2, &[-0.7803, -0.7475], &[-0.8445, -0.7610]),
    (
        4,
        &[-0.7898, -0.7748, -0.7546, -0.7366],
        &[-0.8577, -0.8107, -0.7787, -0.7461],
    ),
    (
        6,
        &[-0.7925, -0.7845, -0.7723, -0.7577, -0.7436, -0.7331],
        &[-0.8628, -0.8438, -0.8215, -0.7859, -0.7632, -0.7396],
    ),
];

pub const EDGES_SHALLOW: [f64; 2] = [-0.7953, -0.7293];
pub const EDGES_DEEP: [f64; 2] = [-0.8701, -0.8106];

pub fn potential(depths: (f64, f64), n: u32) -> Potential {
    Potential::new(depths.0, depths.1, n, MASS).unwrap()
}

pub fn settings() -> SolverSettings {
    SolverSettings::default()
}

/// Every tabulated configuration.
pub fn configurations() -> Vec<Potential> {
    let mut out = Vec::new();
    for (n, _, _) in TABLE {
        out.push(potential(SYMMETRIC, n));
        out.push(potential(ASYMMETRIC, n));
    }
    out
}

/// Second difference `(y[i+1] − 2y[i] + y[i−1]) / h²` at interior nodes.
pub fn second_difference(values: &[f64], h: f64) -> Vec<f64> {
    values
        .windows(3)
        .map(|w| (w[2] - 2.0 * w[1] + w[0]) / (h * h))
        .collect()
}
