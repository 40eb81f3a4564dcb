//! Dense-coding capacity of the shared state over time and over p.

use eur::applications::{capacity_curves, Schedule};
use eur::channels::Noise;
use eur::BellDiagonalCoeffs;

fn main() -> eur::Result<()> {
    let c = BellDiagonalCoeffs::new(1.0, 1.0, -1.0)?;
    let times: Vec<f64> = (0..=5).map(|i| i as f64 / 5.0).collect();
    for rate in [0.1, 0.3, 0.7] {
        let curve = capacity_curves(Noise::AmplitudeDamping, &c, &Schedule::Time { rate, times: times.clone() })?;
        let caps: Vec<String> = curve.iter().map(|p| format!("{:.4}", p.capacity)).collect();
        println!("lambda = {rate}: {}", caps.join(" "));
    }
    let ps: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    for p in capacity_curves(Noise::BitPhaseFlip, &c, &Schedule::Parameter(ps))? {
        println!("p = {:.2}: C = {:.6} (closed form {:.6})", p.param, p.capacity, p.closed_form);
    }
    Ok(())
}
