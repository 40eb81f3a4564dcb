//! Uncertainty and its three lower bounds as qubit A decays.

use eur::bounds::default_report;
use eur::channels::{d_of_t, noisy_bell_state, Noise};
use eur::BellDiagonalCoeffs;

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    println!("{:>5} {:>9} {:>9} {:>9} {:>9}", "d", "U", "Berta", "Pati", "Adabi");
    for i in 0..=10 {
        let d = i as f64 / 10.0;
        let r = default_report(&noisy_bell_state(&c, Noise::AmplitudeDamping, d, None)?)?;
        println!("{d:>5.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5}", r.u_lhs, r.berta, r.pati, r.adabi);
        assert!(r.ordering_holds());
    }
    println!("d(t = 2, lambda = 0.3) = {:.6}", d_of_t(0.3, 2.0)?);
    Ok(())
}
