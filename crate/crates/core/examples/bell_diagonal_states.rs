//! Bell-diagonal states: physicality, spectra, X-state view and reduced states.

use eur::linalg::hermitian_eigenvalues;
use eur::states::{as_xstate, bell_diagonal_density, reduced_state};
use eur::{BellDiagonalCoeffs, Subsystem};

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    println!("coefficients {:?}", c.as_array());
    println!("closed-form spectrum {:?}", c.eigenvalues());

    let rho = bell_diagonal_density(&c);
    println!("numeric spectrum     {:?}", hermitian_eigenvalues(&rho)?.values());

    let x = as_xstate(&rho)?;
    println!("populations {:?}, a14 = {}, a23 = {}", x.populations(), x.a14, x.a23);
    println!("rho_A = {:?}", reduced_state(&rho, Subsystem::A)?.entries());

    // outside the tetrahedron
    match BellDiagonalCoeffs::new(1.0, 1.0, 1.0) {
        Ok(_) => println!("(1, 1, 1) accepted?"),
        Err(e) => println!("(1, 1, 1) rejected: {e}"),
    }
    Ok(())
}
