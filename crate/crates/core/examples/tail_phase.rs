// The phase accumulated in a force-free exterior region.
//
// Outside the wells the amplitude equation has constant coefficients and
// the remaining phase has the closed form
// `atan2(1/(A·κ), A + A'/κ)` with `κ = √(−2mE)`. The chunked numerical
// integration used by the level finder is compared against it.

use multiwell::milne::trace_tail;
use multiwell::{AmplitudePhaseState, Direction, Result, SolverSettings};

pub fn run_example() -> Result<()> {
    let settings = SolverSettings::default();
    let mass = 1.0;
    for (a, a_prime, energy) in [(1.0, 0.0, -0.5), (0.7, 0.3, -0.2), (2.0, -0.4, -1.5)] {
        let state = AmplitudePhaseState::new(a, a_prime, 0.0);
        let trace = trace_tail(state, 0.0, Direction::Right, energy, mass, &settings)?;
        let kappa = (-2.0 * mass * energy).sqrt();
        let exact = (1.0 / (a * kappa)).atan2(a + a_prime / kappa);
        println!(
            "A={a} A'={a_prime} E={energy}: {:.12} vs {exact:.12} after {:.1} units ({} chunks)",
            trace.phase,
            trace.extent,
            trace.increments.len()
        );
        assert!((trace.phase - exact).abs() < 1e-8);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
