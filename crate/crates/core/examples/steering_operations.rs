//! Filtering and weak measurement applied on A after amplitude damping.

use eur::bounds::default_report;
use eur::channels::{filter_op, noisy_bell_state, weak_op, Noise};
use eur::BellDiagonalCoeffs;

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    let d = 0.5;
    let bare = default_report(&noisy_bell_state(&c, Noise::AmplitudeDamping, d, None)?)?;
    println!("d = {d}: no steering  U = {:.5}", bare.u_lhs);
    for k in [0.2, 0.3, 0.4, 0.5] {
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, d, Some(&filter_op(k)?))?;
        println!("filter k = {k}   U = {:.5}", default_report(&rho)?.u_lhs);
    }
    for s in [0.0, 0.4, 0.6, 0.8] {
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, d, Some(&weak_op(s)?))?;
        println!("weak   s = {s}   U = {:.5}", default_report(&rho)?.u_lhs);
    }
    // the weak-measurement operator cannot reach s = 1
    if let Err(e) = weak_op(1.0) {
        println!("weak_op(1): {e}");
    }
    Ok(())
}
