// Bound-state energies of the double, quadruple and sextuple wells, for
// equal depths and for a deeper left half.

use multiwell::floquet::{classify, ground_band, Classification};
use multiwell::{find_levels, Potential, Result, SolverSettings};

pub fn run_example() -> Result<()> {
    let settings = SolverSettings::default();
    let mass = 2.0;
    let bands = [
        ground_band(-1.35, mass, &settings)?.unwrap(),
        ground_band(-1.25, mass, &settings)?.unwrap(),
    ];
    for (v1, v2) in [(-1.25, -1.25), (-1.35, -1.25)] {
        for n in [2, 4, 6] {
            let pot = Potential::new(v1, v2, n, mass)?;
            let levels = find_levels(&pot, &settings, 400)?;
            print!("({v1}, {v2}) N={n}:");
            for level in &levels {
                let tag = match classify(level.energy, &bands) {
                    Classification::InBand(0) => "deep",
                    Classification::InBand(_) => "shallow",
                    _ => "excited",
                };
                print!(" {:.4}[{tag}]", level.energy);
            }
            println!();
            assert!(levels.iter().all(|l| l.phase_residual() < 1e-8));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
