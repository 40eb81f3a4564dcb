//! Entropic and correlation measures of two-qubit states, in bits.

mod optimize;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::{conjugate_sandwich, embed, hermitian_eigenvalues, partial_trace, ComplexMatrix, Subsystem};
use crate::states::XState;
use crate::tol;
use crate::{Error, Result};

pub use optimize::{optimal_measurement, MeasurementOptimum};

/// A rank-one projective measurement on one qubit.
#[derive(Clone, Debug)]
pub struct ProjectiveBasis {
    projectors: [ComplexMatrix; 2],
    label: String,
}

impl ProjectiveBasis {
    pub fn new(p0: ComplexMatrix, p1: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        for p in [&p0, &p1] {
            if p.dim() != (2, 2) {
                return Err(Error::InvalidBasis(format!("projector is {:?}, expected 2x2", p.dim())));
            }
            if p.max_asymmetry() > tol::HERMITIAN {
                return Err(Error::InvalidBasis("projector is not Hermitian".into()));
            }
            if (p * p).max_abs_diff(p) > tol::HERMITIAN {
                return Err(Error::InvalidBasis("projector is not idempotent".into()));
            }
            if (p.trace().re - 1.0).abs() > tol::HERMITIAN {
                return Err(Error::InvalidBasis("projector is not rank one".into()));
            }
        }
        if p0.add(&p1)?.max_abs_diff(&ComplexMatrix::identity(2)) > tol::CPTP {
            return Err(Error::InvalidBasis("projectors do not sum to the identity".into()));
        }
        Ok(Self {
            projectors: [p0, p1],
            label: label.into(),
        })
    }

    /// Eigenbasis of n·σ for the Bloch direction `n`.
    pub fn along(direction: BlochDirection) -> Self {
        let n = direction.unit_vector();
        let i = Complex64::new(0.0, 1.0);
        let half = |sign: f64| {
            ComplexMatrix::new(
                2,
                2,
                vec![
                    Complex64::new(0.5 * (1.0 + sign * n[2]), 0.0),
                    0.5 * sign * (n[0] - i * n[1]),
                    0.5 * sign * (n[0] + i * n[1]),
                    Complex64::new(0.5 * (1.0 - sign * n[2]), 0.0),
                ],
            )
            .unwrap()
        };
        Self {
            projectors: [half(1.0), half(-1.0)],
            label: format!("n(θ={:.6}, φ={:.6})", direction.theta(), direction.phi()),
        }
    }

    pub fn pauli_x() -> Self {
        Self::along(BlochDirection { theta: PI / 2.0, phi: 0.0 }).relabel("σx")
    }

    pub fn pauli_y() -> Self {
        Self::along(BlochDirection {
            theta: PI / 2.0,
            phi: PI / 2.0,
        })
        .relabel("σy")
    }

    pub fn pauli_z() -> Self {
        Self {
            projectors: [ComplexMatrix::diag(&[1.0, 0.0]), ComplexMatrix::diag(&[0.0, 1.0])],
            label: "σz".into(),
        }
    }

    fn relabel(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    pub fn projectors(&self) -> &[ComplexMatrix; 2] {
        &self.projectors
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Direction on the Bloch sphere, θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2pi)",
            });
        }
        Ok(Self { theta, phi })
    }

    pub(crate) fn from_vector(v: [f64; 3]) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let theta = (v[2] / norm).clamp(-1.0, 1.0).acos();
        let mut phi = v[1].atan2(v[0]);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x); `x` is clamped to [0, 1].
pub fn binary_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    plogp(x) + plogp(1.0 - x)
}

/// -p log2 p with 0 log 0 = 0.
fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// -Σ p_i log2 p_i of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(&bad) = p.iter().find(|&&x| x.is_nan() || x < -tol::PSD) {
        return Err(Error::NegativeProbability(bad));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > tol::TRACE {
        return Err(Error::NotNormalized(sum));
    }
    Ok(p.iter().map(|&x| plogp(x.clamp(0.0, 1.0))).sum())
}

/// -Tr ρ log2 ρ.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    shannon_entropy(&hermitian_eigenvalues(rho)?.probabilities()?)
}

/// Σ_x (Π_x on `side`) ρ (Π_x on `side`).
pub fn post_measurement_state(rho: &ComplexMatrix, basis: &ProjectiveBasis, side: Subsystem) -> Result<ComplexMatrix> {
    crate::linalg::ensure_two_qubit(rho)?;
    let mut out = ComplexMatrix::zeros(4, 4);
    for p in basis.projectors() {
        out = out.add(&conjugate_sandwich(&embed(p, side), rho)?)?;
    }
    Ok(out)
}

fn ensure_distinct(measured: Subsystem, memory: Subsystem) -> Result<()> {
    if measured == memory {
        return Err(Error::SameSubsystem);
    }
    Ok(())
}

/// S(K|M) = S(ρ_KM) - S(ρ_M), where K is the classical outcome of measuring
/// `basis` on `measured` and M is the `memory` qubit.
pub fn conditional_entropy_after_measurement(
    rho: &ComplexMatrix,
    basis: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<f64> {
    ensure_distinct(measured, memory)?;
    let post = post_measurement_state(rho, basis, measured)?;
    Ok(von_neumann_entropy(&post)? - von_neumann_entropy(&partial_trace(rho, memory)?)?)
}

/// S(ρ) - S(ρ_conditioning); negative values signal entanglement.
pub fn quantum_conditional_entropy(rho: &ComplexMatrix, conditioning: Subsystem) -> Result<f64> {
    Ok(von_neumann_entropy(rho)? - von_neumann_entropy(&partial_trace(rho, conditioning)?)?)
}

/// S(ρ_A) + S(ρ_B) - S(ρ_AB).
pub fn mutual_information(rho: &ComplexMatrix) -> Result<f64> {
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?)?;
    Ok(s_a + s_b - von_neumann_entropy(rho)?)
}

/// Conditional states of `memory` after measuring `basis` on `measured`, as
/// (probability, normalized state). Branches below the post-selection floor
/// are dropped.
pub fn measurement_branches(
    rho: &ComplexMatrix,
    basis: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<Vec<(f64, ComplexMatrix)>> {
    ensure_distinct(measured, memory)?;
    let mut branches = Vec::with_capacity(2);
    for p in basis.projectors() {
        let unnormalized = partial_trace(&conjugate_sandwich(&embed(p, measured), rho)?, memory)?;
        let prob = unnormalized.trace().re;
        if prob >= tol::NORM {
            branches.push((prob, unnormalized.scale(1.0 / prob)));
        }
    }
    Ok(branches)
}

/// Holevo quantity S(ρ_M) - Σ_i p_i S(ρ_M^i) of the ensemble the memory is
/// left in by the measurement.
pub fn holevo_quantity(
    rho: &ComplexMatrix,
    basis: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<f64> {
    let s_memory = von_neumann_entropy(&partial_trace(rho, memory)?)?;
    let mut average = 0.0;
    for (p, state) in measurement_branches(rho, basis, measured, memory)? {
        average += p * von_neumann_entropy(&state)?;
    }
    Ok(s_memory - average)
}

/// min over projective measurements on `measured` of the average entropy of
/// the other qubit's conditional states.
pub fn min_conditional_entropy_over_measurements(rho: &ComplexMatrix, measured: Subsystem) -> Result<f64> {
    Ok(optimal_measurement(rho, measured)?.entropy)
}

/// Classical correlation J: the largest Holevo quantity over projective
/// measurements on `measured`.
pub fn classical_correlation(rho: &ComplexMatrix, measured: Subsystem) -> Result<f64> {
    let s_other = von_neumann_entropy(&partial_trace(rho, measured.other())?)?;
    Ok(s_other - min_conditional_entropy_over_measurements(rho, measured)?)
}

/// Quantum discord I - J with the measurement on `measured`.
pub fn quantum_discord(rho: &ComplexMatrix, measured: Subsystem) -> Result<f64> {
    let mi = mutual_information(rho)?;
    let j = classical_correlation(rho, measured)?;
    Ok((mi - j).max(0.0))
}

/// Closed-form X-state discord with the measurement on qubit B, restricted
/// to σz and the best equatorial direction:
///
/// D = S(ρ_B) - S(ρ_AB) + min{P1, P2}, P1 = h(Γ),
/// P2 = -Σ ρ_ii log2 ρ_ii - h(ρ11 + ρ33),
/// Γ = ½[1 + √((1 - 2(ρ33 + ρ44))² + 4(|ρ14| + |ρ23|)²)].
///
/// The restriction is not always optimal; [`quantum_discord`] is the
/// reference.
pub fn discord_xstate_closed(x: &XState) -> f64 {
    let s_b = binary_entropy(x.d11 + x.d33);
    let s_ab: f64 = x.eigenvalues().iter().map(|&l| plogp(l.clamp(0.0, 1.0))).sum();
    let rz = 1.0 - 2.0 * (x.d33 + x.d44);
    let coherence = x.a14.norm() + x.a23.norm();
    let gamma = 0.5 * (1.0 + (rz * rz + 4.0 * coherence * coherence).sqrt());
    let p1 = binary_entropy(gamma);
    let p2: f64 = x.populations().iter().map(|&p| plogp(p.clamp(0.0, 1.0))).sum::<f64>()
        - binary_entropy(x.d11 + x.d33);
    s_b - s_ab + p1.min(p2)
}
