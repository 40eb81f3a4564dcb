//! Uncertainty as an entanglement witness and the noise level where it stops
//! detecting entanglement.

use eur::applications::{witness_threshold, witness_verdict};
use eur::channels::{noisy_bell_state, Noise};
use eur::measures::ProjectiveBasis;
use eur::{BellDiagonalCoeffs, Subsystem};

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-1.0, 1.0, 1.0)?;
    let (x, z) = (ProjectiveBasis::pauli_x(), ProjectiveBasis::pauli_z());
    for d in [0.2, 0.6] {
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, d, None)?;
        let w = witness_verdict(&rho, &x, &z, Subsystem::A, Subsystem::B)?;
        println!("d = {d}: U = {:.4} vs {} -> witnessed {}", w.u_value, w.threshold, w.entangled_witnessed);
    }
    for (noise, s) in [(Noise::AmplitudeDamping, 0.0), (Noise::AmplitudeDamping, 0.8), (Noise::BitPhaseFlip, 0.0)] {
        println!("{}", witness_threshold(noise, &c, s)?);
    }
    Ok(())
}
