//! Closed-form expressions for spectra, discord, uncertainty and capacity
//! against the numerical pipeline.

use eur::channels::Noise;
use eur::errata::errata_report;
use eur::sweep::Grid;
use eur::BellDiagonalCoeffs;

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(-0.5, 0.4, 0.8)?;
    let grid = Grid::unit(41).values();
    for noise in [Noise::AmplitudeDamping, Noise::BitPhaseFlip] {
        println!("{}", errata_report(&c, noise, &grid)?);
    }
    Ok(())
}
