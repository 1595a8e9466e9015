// Ground state of the symmetric quadruple well, printed as a bar chart.

use multiwell::{find_levels, wavefunction, Potential, Result, SolverSettings};

pub fn run_example() -> Result<()> {
    let settings = SolverSettings::default();
    let pot = Potential::new(-1.25, -1.25, 4, 2.0)?;
    let levels = find_levels(&pot, &settings, 400)?;
    let ground = &levels[0];

    let grid: Vec<f64> = (0..=40).map(|i| -3.0 + 0.5 * i as f64).collect();
    let samples = wavefunction(ground, &pot, &settings, &grid)?;
    let peak = samples.iter().map(|(_, f)| f.abs()).fold(0.0, f64::max);
    println!("E0 = {:.6}", ground.energy);
    for (x, f) in &samples {
        let width = (30.0 * f.abs() / peak).round() as usize;
        println!("{x:6.2} {f:+.4e} {}", "#".repeat(width));
    }
    // no nodes in the ground state
    assert!(samples.iter().all(|(_, f)| *f * samples[20].1 >= 0.0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
