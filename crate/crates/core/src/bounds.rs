//! The measurement uncertainty U = S(X|B) + S(Z|B), its Berta, Pati and
//! Adabi lower bounds, and closed-form cross-checks for the two channels.

use crate::channels::{noisy_bell_state, Noise};
use crate::linalg::{ComplexMatrix, Subsystem};
use crate::measures::{
    classical_correlation, conditional_entropy_after_measurement, holevo_quantity, min_conditional_entropy_over_measurements,
    mutual_information, quantum_conditional_entropy, quantum_discord, ProjectiveBasis,
};
use crate::states::BellDiagonalCoeffs;
use crate::tol;
use crate::{Error, Result};

/// Uncertainty, bounds and correlations at one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub u_lhs: f64,
    pub berta: f64,
    pub pati: f64,
    pub adabi: f64,
    pub tightness_berta: f64,
    pub tightness_pati: f64,
    pub tightness_adabi: f64,
    /// Discord with the measurement on the memory qubit.
    pub discord: f64,
    /// Minimal average entropy of the measured qubit after a measurement on
    /// the memory qubit.
    pub s_min_cond: f64,
    pub complementarity_c: f64,
}

impl BoundReport {
    /// berta ≤ pati ≤ adabi ≤ u_lhs, each within [`tol::ORDER`].
    pub fn ordering_holds(&self) -> bool {
        self.berta <= self.pati + tol::ORDER && self.pati <= self.adabi + tol::ORDER && self.adabi <= self.u_lhs + tol::ORDER
    }
}

/// Largest squared overlap between eigenvectors of the two bases.
pub fn complementarity_c(b1: &ProjectiveBasis, b2: &ProjectiveBasis) -> f64 {
    let mut c: f64 = 0.0;
    for p in b1.projectors() {
        for q in b2.projectors() {
            // Tr(|x⟩⟨x| |z⟩⟨z|) = |⟨x|z⟩|²
            c = c.max((p * q).trace().re);
        }
    }
    c.min(1.0)
}

/// S(K1|M) + S(K2|M) for the two measurements on `measured`.
pub fn uncertainty_lhs(
    rho: &ComplexMatrix,
    b1: &ProjectiveBasis,
    b2: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<f64> {
    let u = conditional_entropy_after_measurement(rho, b1, measured, memory)?
        + conditional_entropy_after_measurement(rho, b2, measured, memory)?;
    Ok(u.max(0.0))
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::OutOfRange {
            name: "c",
            value: c,
            range: "(0, 1]",
        });
    }
    Ok(())
}

/// log2(1/c) + S(A|B), with B as the memory.
pub fn berta_bound(rho: &ComplexMatrix, c: f64) -> Result<f64> {
    check_c(c)?;
    Ok(-c.log2() + quantum_conditional_entropy(rho, Subsystem::B)?)
}

/// Berta bound plus max(0, D - J), discord and classical correlation both
/// taken with the measurement on `measured`.
pub fn pati_bound(rho: &ComplexMatrix, c: f64, measured: Subsystem) -> Result<f64> {
    let berta = berta_bound(rho, c)?;
    let j = classical_correlation(rho, measured)?;
    let d = (mutual_information(rho)? - j).max(0.0);
    Ok(berta + (d - j).max(0.0))
}

/// Berta bound plus max(0, δ), δ = I(A:B) - I(K1:M) - I(K2:M) with Holevo
/// quantities for the two measurements.
pub fn adabi_bound(
    rho: &ComplexMatrix,
    c: f64,
    b1: &ProjectiveBasis,
    b2: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<f64> {
    let berta = berta_bound(rho, c)?;
    let delta = mutual_information(rho)?
        - holevo_quantity(rho, b1, measured, memory)?
        - holevo_quantity(rho, b2, measured, memory)?;
    Ok(berta + delta.max(0.0))
}

/// T = U - bound.
pub fn tightness(u_lhs: f64, bound: f64) -> f64 {
    u_lhs - bound
}

/// Whether c_i = -c_j c_k for 1-based axis labels (i, j, k).
pub fn spmc_satisfied(coeffs: &BellDiagonalCoeffs, i: usize, j: usize, k: usize) -> Result<bool> {
    let mut sorted = [i, j, k];
    sorted.sort_unstable();
    if sorted != [1, 2, 3] {
        return Err(Error::BadAxes(i, j, k));
    }
    let c = coeffs.as_array();
    Ok((c[i - 1] + c[j - 1] * c[k - 1]).abs() <= tol::SPMC)
}

/// Full report for the measurement pair (`b1`, `b2`) on `measured` with
/// `memory` as the quantum memory.
pub fn bound_report(
    rho: &ComplexMatrix,
    b1: &ProjectiveBasis,
    b2: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<BoundReport> {
    let c = complementarity_c(b1, b2);
    let u_lhs = uncertainty_lhs(rho, b1, b2, measured, memory)?;
    let berta = berta_bound(rho, c)?;
    let pati = pati_bound(rho, c, measured)?;
    let adabi = adabi_bound(rho, c, b1, b2, measured, memory)?;
    Ok(BoundReport {
        u_lhs,
        berta,
        pati,
        adabi,
        tightness_berta: tightness(u_lhs, berta),
        tightness_pati: tightness(u_lhs, pati),
        tightness_adabi: tightness(u_lhs, adabi),
        discord: quantum_discord(rho, memory)?,
        s_min_cond: min_conditional_entropy_over_measurements(rho, memory)?,
        complementarity_c: c,
    })
}

/// Report for σx and σz on A with B as memory.
pub fn default_report(rho: &ComplexMatrix) -> Result<BoundReport> {
    bound_report(
        rho,
        &ProjectiveBasis::pauli_x(),
        &ProjectiveBasis::pauli_z(),
        Subsystem::A,
        Subsystem::B,
    )
}

/// A closed-form expression next to the numerical value it should equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormCheck {
    /// `None` when the expression leaves its real domain.
    pub closed_form: Option<f64>,
    pub pipeline: f64,
}

impl ClosedFormCheck {
    pub fn gap(&self) -> Option<f64> {
        self.closed_form.map(|v| v - self.pipeline)
    }

    fn new(value: f64, pipeline: f64) -> Self {
        Self {
            closed_form: value.is_finite().then_some(value),
            pipeline,
        }
    }
}

/// a·x·atanh(x)/ln 2 + b·log2(1+x) + e·log2(1-x), regrouped as
/// (b + ax/2)·log2(1+x) + (e - ax/2)·log2(1-x) so that terms whose weight
/// vanishes at x = ±1 drop out at their limit.
fn atanh_group(a: f64, b: f64, e: f64, x: f64) -> f64 {
    wlog(b + 0.5 * a * x, 1.0 + x) + wlog(e - 0.5 * a * x, 1.0 - x)
}

/// w·log2(y), zero when the weight vanishes.
fn wlog(w: f64, y: f64) -> f64 {
    if w.abs() < 1e-12 {
        0.0
    } else if y <= 0.0 {
        f64::NAN
    } else {
        w * y.log2()
    }
}

fn default_u(coeffs: &BellDiagonalCoeffs, noise: Noise, param: f64) -> Result<f64> {
    let rho = noisy_bell_state(coeffs, noise, param, None)?;
    uncertainty_lhs(
        &rho,
        &ProjectiveBasis::pauli_x(),
        &ProjectiveBasis::pauli_z(),
        Subsystem::A,
        Subsystem::B,
    )
}

/// Closed-form uncertainty under amplitude damping,
///
/// U = -¼{4μ1 atanh μ1 + 2μ2 atanh μ2 - 2μ3 atanh μ3 + 2 log2(1+μ1)
///       + 2 log2(1+μ2) + log2(1-μ2) + log2(1+μ2) + log2(1+μ3) + log2(1-μ3)},
///
/// μ1 = √((c1² - c2²)(1-d)), μ2 = c3 + d - c3 d, μ3 = c3 - c3 d - d,
/// next to the pipeline value.
pub fn ad_closed_form_u(coeffs: &BellDiagonalCoeffs, d: f64) -> Result<ClosedFormCheck> {
    let pipeline = default_u(coeffs, Noise::AmplitudeDamping, d)?;
    let [c1, c2, c3] = coeffs.as_array();
    let m1 = (-(c1 - c2) * (c1 + c2) * (d - 1.0)).sqrt();
    let m2 = c3 + d - c3 * d;
    let m3 = c3 - c3 * d - d;
    let value = -0.25 * (atanh_group(4.0, 2.0, 0.0, m1) + atanh_group(2.0, 3.0, 1.0, m2) + atanh_group(-2.0, 1.0, 1.0, m3));
    Ok(ClosedFormCheck::new(value, pipeline))
}

/// Closed forms under bit-phase flip: the uncertainty
///
/// U = -½{-2ν1 atanh ν1 - log2(1+ν1) - log2(1-ν1) - (1+ν2) log2(1+ν2)
///       + (ν2-1) log2(1-ν2)},  ν1 = c1(1-2p), ν2 = c3(1-2p),
///
/// and the bound -¼ Σ ζ_i log2(ζ_i/4) with ζ_i four times the spectrum.
/// Returns (uncertainty check, bound check); the bound's pipeline value is
/// the Berta bound at c = ½.
pub fn bpf_closed_forms(coeffs: &BellDiagonalCoeffs, p: f64) -> Result<(ClosedFormCheck, ClosedFormCheck)> {
    let rho = noisy_bell_state(coeffs, Noise::BitPhaseFlip, p, None)?;
    let u_pipeline = uncertainty_lhs(
        &rho,
        &ProjectiveBasis::pauli_x(),
        &ProjectiveBasis::pauli_z(),
        Subsystem::A,
        Subsystem::B,
    )?;
    let bound_pipeline = berta_bound(&rho, 0.5)?;

    let [c1, c2, c3] = coeffs.as_array();
    let n1 = c1 - 2.0 * c1 * p;
    let n2 = c3 - 2.0 * c3 * p;
    let u = -0.5 * (atanh_group(-2.0, -1.0, -1.0, n1) + atanh_group(0.0, -(1.0 + n2), n2 - 1.0, n2));

    let zeta = [
        1.0 + c1 + c2 - c3 - 2.0 * c1 * p + 2.0 * c3 * p,
        1.0 + c1 - c2 + c3 - 2.0 * (c1 + c3) * p,
        1.0 - c1 - c2 - c3 + 2.0 * (c1 + c3) * p,
        1.0 + c2 + c3 - 2.0 * c3 * p + c1 * (-1.0 + 2.0 * p),
    ];
    let bound = -0.25 * zeta.iter().map(|&z| wlog(z, z / 4.0)).sum::<f64>();
    Ok((ClosedFormCheck::new(u, u_pipeline), ClosedFormCheck::new(bound, bound_pipeline)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::BlochDirection;
    use crate::states::bell_diagonal_density;

    fn x() -> ProjectiveBasis {
        ProjectiveBasis::pauli_x()
    }

    fn z() -> ProjectiveBasis {
        ProjectiveBasis::pauli_z()
    }

    fn bell() -> ComplexMatrix {
        bell_diagonal_density(&BellDiagonalCoeffs::new(1.0, -1.0, 1.0).unwrap())
    }

    fn mixed() -> ComplexMatrix {
        ComplexMatrix::identity(4).scale(0.25)
    }

    fn fig1() -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::new(-0.5, 0.4, 0.8).unwrap()
    }

    #[test]
    fn complementarity_examples() {
        assert!((complementarity_c(&x(), &z()) - 0.5).abs() < 1e-15);
        assert!((complementarity_c(&z(), &z()) - 1.0).abs() < 1e-15);
        let tilted = ProjectiveBasis::along(BlochDirection::new(std::f64::consts::PI / 3.0, 0.0).unwrap());
        let oracle = (std::f64::consts::PI / 6.0).cos().powi(2);
        assert!((complementarity_c(&tilted, &z()) - oracle).abs() < 1e-15);
    }

    #[test]
    fn uncertainty_examples() {
        let u = |rho: &ComplexMatrix| uncertainty_lhs(rho, &x(), &z(), Subsystem::A, Subsystem::B).unwrap();
        assert!(u(&bell()).abs() < 1e-14);
        assert!((u(&mixed()) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn berta_examples() {
        assert!(berta_bound(&bell(), 0.5).unwrap().abs() < 1e-14);
        assert!((berta_bound(&mixed(), 0.5).unwrap() - 2.0).abs() < 1e-14);
        let s_ab: f64 = [0.675f64, 0.225, 0.075, 0.025].iter().map(|p| -p * p.log2()).sum();
        let b = berta_bound(&bell_diagonal_density(&fig1()), 0.5).unwrap();
        assert!((b - (1.0 + s_ab - 1.0)).abs() < 1e-14);
        assert!(berta_bound(&bell(), 0.0).is_err());
    }

    #[test]
    fn pati_examples() {
        let cc = ComplexMatrix::diag(&[0.4, 0.1, 0.2, 0.3]);
        let berta = berta_bound(&cc, 0.5).unwrap();
        assert!((pati_bound(&cc, 0.5, Subsystem::A).unwrap() - berta).abs() < 1e-12);
        // D = J = 1 on a Bell state
        assert!(pati_bound(&bell(), 0.5, Subsystem::A).unwrap().abs() < 1e-12);
    }

    #[test]
    fn adabi_examples() {
        let prod = crate::linalg::tensor_product(&ComplexMatrix::diag(&[0.7, 0.3]), &ComplexMatrix::diag(&[0.2, 0.8]));
        let a = adabi_bound(&prod, 0.5, &x(), &z(), Subsystem::A, Subsystem::B).unwrap();
        assert!((a - berta_bound(&prod, 0.5).unwrap()).abs() < 1e-12);
        assert!(adabi_bound(&bell(), 0.5, &x(), &z(), Subsystem::A, Subsystem::B).unwrap().abs() < 1e-12);
    }

    #[test]
    fn tightness_examples() {
        let r = default_report(&bell()).unwrap();
        assert!(r.tightness_berta.abs() < 1e-12);
        let r = default_report(&mixed()).unwrap();
        assert!(r.tightness_berta.abs() < 1e-12);
        assert!(r.ordering_holds());
    }

    #[test]
    fn spmc_examples() {
        let c = BellDiagonalCoeffs::new(0.5, 0.5, -0.25).unwrap();
        assert!(spmc_satisfied(&c, 3, 1, 2).unwrap());
        let c = BellDiagonalCoeffs::new(1.0, -1.0, 1.0).unwrap();
        assert!(spmc_satisfied(&c, 3, 1, 2).unwrap());
        // 0.4 = -(-0.5)(0.8): the y coefficient saturates, the others do not
        assert!(spmc_satisfied(&fig1(), 2, 1, 3).unwrap());
        assert!(!spmc_satisfied(&fig1(), 1, 2, 3).unwrap());
        assert!(!spmc_satisfied(&fig1(), 3, 1, 2).unwrap());
        assert!(matches!(spmc_satisfied(&fig1(), 1, 1, 2), Err(Error::BadAxes(1, 1, 2))));
    }

    #[test]
    fn relation_between_berta_discord_and_min_entropy() {
        let r = default_report(&bell_diagonal_density(&fig1())).unwrap();
        assert!((r.berta - (1.0 + r.s_min_cond - r.discord)).abs() < 1e-8);
    }

    #[test]
    fn fig1_first_point_ordering() {
        let r = default_report(&bell_diagonal_density(&fig1())).unwrap();
        assert!(r.ordering_holds(), "{r:?}");
    }

    #[test]
    fn closed_forms_at_identity_points() {
        // p = ½ zeroes both ν arguments
        let (u, b) = bpf_closed_forms(&fig1(), 0.5).unwrap();
        assert!(u.closed_form.is_some());
        assert!(b.gap().unwrap().abs() < 1e-12);
        let (_, b) = bpf_closed_forms(&fig1(), 0.0).unwrap();
        assert!(b.gap().unwrap().abs() < 1e-12);
        let at_zero = ad_closed_form_u(&fig1(), 0.0).unwrap();
        assert!(at_zero.pipeline > 0.0);
        // μ2 → 1 at full decay; its log2(1 - μ2) weight vanishes there
        assert!(atanh_group(2.0, 3.0, 1.0, 1.0).is_finite());
        assert!((atanh_group(2.0, 0.0, 1.0, 0.3) - (2.0 * 0.3 * 0.3f64.atanh() / std::f64::consts::LN_2 + 0.7f64.log2())).abs() < 1e-14);
    }
}
