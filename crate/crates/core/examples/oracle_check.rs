// Amplitude-phase levels against a plain finite-difference diagonalization
// of the same Hamiltonian.

use multiwell::oracle::{fd_spectrum, richardson, FdGrid, DEFAULT_PADDING};
use multiwell::{find_levels, Potential, Result, SolverSettings};

pub fn run_example() -> Result<()> {
    let pot = Potential::new(-1.35, -1.25, 2, 2.0)?;
    let levels = find_levels(&pot, &SolverSettings::default(), 400)?;
    let grid = FdGrid::around(&pot, DEFAULT_PADDING, 8000);
    let reference = fd_spectrum(&pot, &grid, usize::MAX)?;
    assert_eq!(levels.len(), reference.len());

    println!(" j  amplitude-phase  finite-difference  |diff|");
    for (level, fd) in levels.iter().zip(&reference) {
        let diff = (level.energy - fd).abs();
        println!(
            "{:2}  {:15.8}  {fd:17.8}  {diff:.2e}",
            level.index_j, level.energy
        );
        assert!(diff < 2e-3);
    }
    let c = richardson(&pot, &FdGrid::around(&pot, DEFAULT_PADDING, 1000), 0)?;
    println!("observed order of the three-point stencil: {:.3}", c.order);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
