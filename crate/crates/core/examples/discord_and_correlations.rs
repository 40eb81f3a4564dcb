//! Mutual information, classical correlation and discord, numerically and
//! from the X-state closed form.

use eur::channels::{noisy_bell_state, Noise};
use eur::measures::{classical_correlation, discord_xstate_closed, mutual_information, optimal_measurement, quantum_discord};
use eur::states::as_xstate;
use eur::{BellDiagonalCoeffs, Subsystem};

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    for d in [0.0, 0.3, 0.7] {
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, d, None)?;
        let best = optimal_measurement(&rho, Subsystem::B)?;
        println!(
            "d = {d}: I = {:.6}  J_B = {:.6}  D_B = {:.6}  closed form {:.6}  optimum theta = {:.4}",
            mutual_information(&rho)?,
            classical_correlation(&rho, Subsystem::B)?,
            quantum_discord(&rho, Subsystem::B)?,
            discord_xstate_closed(&as_xstate(&rho)?),
            best.direction.theta(),
        );
    }
    Ok(())
}
