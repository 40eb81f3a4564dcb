//! Bounds under bit-phase flip; Adabi's bound coincides with U here since
//! the channel leaves rho_A maximally mixed.

use eur::bounds::default_report;
use eur::channels::{noisy_bell_state, Noise};
use eur::BellDiagonalCoeffs;

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    println!("{:>5} {:>9} {:>9} {:>9} {:>11}", "p", "U", "Berta", "Pati", "U - Adabi");
    for i in 0..=8 {
        let p = i as f64 / 8.0;
        let r = default_report(&noisy_bell_state(&c, Noise::BitPhaseFlip, p, None)?)?;
        println!("{p:>5.3} {:>9.5} {:>9.5} {:>9.5} {:>11.2e}", r.u_lhs, r.berta, r.pati, r.tightness_adabi);
    }
    Ok(())
}
