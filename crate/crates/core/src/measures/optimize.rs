//! Search for the projective measurement that minimizes the average entropy
//! left on the unmeasured qubit.
//!
//! A rank-one projective measurement on a qubit is fixed by a Bloch direction
//! n; outcome ± has projector (I ± n·σ)/2. Writing the two-qubit state as
//!
//! ρ = ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ T_ij σ_i⊗σ_j)
//!
//! (r on the measured qubit), outcome ± occurs with probability
//! (1 ± r·n)/2 and leaves the other qubit with Bloch vector
//! (s ± Tᵀn)/(1 ± r·n).

use std::f64::consts::PI;

use crate::linalg::{embed, tensor_product, ComplexMatrix, Subsystem};
use crate::measures::{binary_entropy, BlochDirection};
use crate::tol;
use crate::Result;

const GRID_STEP: f64 = PI / 180.0;
const ANGLE_TOL: f64 = 1e-10;
const MAX_ROUNDS: usize = 50;

/// Best measurement direction found and the average branch entropy there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOptimum {
    pub direction: BlochDirection,
    pub entropy: f64,
}

/// Pauli expansion of a two-qubit state, oriented so that `r` belongs to the
/// measured qubit.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BranchModel {
    r: [f64; 3],
    s: [f64; 3],
    t: [[f64; 3]; 3],
}

impl BranchModel {
    pub(crate) fn new(rho: &ComplexMatrix, measured: Subsystem) -> Result<Self> {
        crate::linalg::ensure_two_qubit(rho)?;
        let paulis = [
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::pauli_z(),
        ];
        let expect = |op: &ComplexMatrix| (op * rho).trace().re;
        let mut r = [0.0; 3];
        let mut s = [0.0; 3];
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            r[i] = expect(&embed(&paulis[i], measured));
            s[i] = expect(&embed(&paulis[i], measured.other()));
            for j in 0..3 {
                let (on_a, on_b) = match measured {
                    Subsystem::A => (&paulis[i], &paulis[j]),
                    Subsystem::B => (&paulis[j], &paulis[i]),
                };
                t[i][j] = expect(&tensor_product(on_a, on_b));
            }
        }
        Ok(Self { r, s, t })
    }

    /// Σ_± p_± S(ρ_other | ±) for measurement direction `n`.
    pub(crate) fn average_branch_entropy(&self, n: [f64; 3]) -> f64 {
        let rn: f64 = (0..3).map(|i| self.r[i] * n[i]).sum();
        let mut tn = [0.0; 3];
        for (j, out) in tn.iter_mut().enumerate() {
            *out = (0..3).map(|i| n[i] * self.t[i][j]).sum();
        }
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let weight = 1.0 + sign * rn;
            let p = 0.5 * weight;
            if p < tol::NORM {
                continue;
            }
            let len = (0..3)
                .map(|j| {
                    let v = (self.s[j] + sign * tn[j]) / weight;
                    v * v
                })
                .sum::<f64>()
                .sqrt()
                .min(1.0);
            total += p * binary_entropy(0.5 * (1.0 + len));
        }
        total
    }

    fn at(&self, theta: f64, phi: f64) -> f64 {
        self.average_branch_entropy(unit(theta, phi))
    }
}

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Minimizes the average branch entropy over Bloch directions.
///
/// A 1° grid over θ ∈ [0, π], φ ∈ [0, 2π) picks the start (ties go to the
/// smallest θ, then the smallest φ), then alternating golden-section line
/// searches in θ and φ refine it to 1e-10 rad.
pub fn optimal_measurement(rho: &ComplexMatrix, measured: Subsystem) -> Result<MeasurementOptimum> {
    let model = BranchModel::new(rho, measured)?;
    Ok(model.optimize())
}

impl BranchModel {
    pub(crate) fn optimize(&self) -> MeasurementOptimum {
        let mut best = (0.0, 0.0, self.at(0.0, 0.0));
        for i in 0..=180 {
            let theta = i as f64 * GRID_STEP;
            for j in 0..360 {
                let phi = j as f64 * GRID_STEP;
                let f = self.at(theta, phi);
                if f < best.2 {
                    best = (theta, phi, f);
                }
            }
        }
        let (mut theta, mut phi, mut f) = best;
        for _ in 0..MAX_ROUNDS {
            let (theta2, f_theta) = golden_section(|x| self.at(x, phi), theta - GRID_STEP, theta + GRID_STEP);
            let mut moved = 0.0f64;
            if f_theta < f {
                moved = moved.max((theta2 - theta).abs());
                theta = theta2;
                f = f_theta;
            }
            let (phi2, f_phi) = golden_section(|y| self.at(theta, y), phi - GRID_STEP, phi + GRID_STEP);
            if f_phi < f {
                moved = moved.max((phi2 - phi).abs());
                phi = phi2;
                f = f_phi;
            }
            if moved < ANGLE_TOL {
                break;
            }
        }
        MeasurementOptimum {
            direction: BlochDirection::from_vector(unit(theta, phi)),
            entropy: f,
        }
    }
}

/// Golden-section minimization on [lo, hi]; returns the best point seen.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > ANGLE_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn model_of_maximally_mixed_state_is_flat() {
        let m = BranchModel::new(&ComplexMatrix::identity(4).scale(0.25), Subsystem::A).unwrap();
        for (th, ph) in [(0.0, 0.0), (1.0, 2.0), (2.5, 4.0)] {
            assert!((m.at(th, ph) - 1.0).abs() < 1e-15);
        }
    }
}
