// Ground Floquet bands of the two well depths used throughout the crate.
//
// `cargo run --example band_edges`

use multiwell::floquet::{cell_quantities, ground_band};
use multiwell::{Result, SolverSettings};

const MASS: f64 = 2.0;

pub fn run_example() -> Result<()> {
    let settings = SolverSettings::default();
    for depth in [-1.25, -1.35] {
        let band = ground_band(depth, MASS, &settings)?.expect("a negative depth binds a band");
        println!(
            "v = {depth}: [{:.4}, {:.4}]  width {:.4}",
            band.lower.energy,
            band.upper.energy,
            band.width()
        );
        for edge in [band.lower, band.upper] {
            // the discriminant u·cos γ sits on ±1 exactly at an edge
            let q = cell_quantities(depth, edge.energy, MASS, &settings)?;
            println!(
                "    edge {:.6} ({:?}): u cos γ = {:+.8}",
                edge.energy,
                edge.branch,
                q.discriminant()
            );
            assert!((q.discriminant().abs() - 1.0).abs() < 1e-6);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
