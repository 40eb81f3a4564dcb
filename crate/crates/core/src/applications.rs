//! Entropic entanglement witness, noise thresholds for it, and channel
//! capacity.

use std::fmt;

use crate::bounds::{berta_bound, complementarity_c, uncertainty_lhs};
use crate::channels::{d_of_t, noisy_bell_state, weak_op, Noise};
use crate::errata::capacity_closed_form;
use crate::linalg::{partial_trace, ComplexMatrix, Subsystem};
use crate::measures::{mutual_information, von_neumann_entropy, ProjectiveBasis};
use crate::states::BellDiagonalCoeffs;
use crate::tol;
use crate::{Error, Result};

/// Outcome of the test U < log2(1/c).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessResult {
    pub u_value: f64,
    pub threshold: f64,
    pub entangled_witnessed: bool,
}

/// Evaluates the uncertainty witness. The inequality is strict: a state
/// sitting on the threshold is not witnessed.
pub fn witness_verdict(
    rho: &ComplexMatrix,
    b1: &ProjectiveBasis,
    b2: &ProjectiveBasis,
    measured: Subsystem,
    memory: Subsystem,
) -> Result<WitnessResult> {
    let threshold = -complementarity_c(b1, b2).log2();
    let u_value = uncertainty_lhs(rho, b1, b2, measured, memory)?;
    Ok(WitnessResult {
        u_value,
        threshold,
        entangled_witnessed: u_value < threshold - tol::ORDER,
    })
}

/// Interval of a channel parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Critical channel parameter where the witness switches off.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    pub parameter_name: &'static str,
    pub critical_value: f64,
    pub steering_strength_s: f64,
    /// Parameter values at which the state is witnessed.
    pub window: Vec<Interval>,
}

impl fmt::Display for ThresholdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let window: Vec<String> = self.window.iter().map(Interval::to_string).collect();
        write!(
            f,
            "{}_m = {:.7} (s = {}), witnessed for {} ∈ {}",
            self.parameter_name,
            self.critical_value,
            self.steering_strength_s,
            self.parameter_name,
            window.join(" ∪ ")
        )
    }
}

const SCAN_POINTS: usize = 200;
const ROOT_TOL: f64 = 1e-7;
const BRACKET_H: f64 = 1e-4;

/// Root of U(param) = 1 for σx/σz on A after `noise` and a weak measurement
/// of strength `s`.
///
/// A coarse scan locates the first sign change; bisection refines it. Under
/// amplitude damping the scan covers [0, 1) (at d = 1 the state is a product
/// with U = 1 exactly). Under bit-phase flip it covers [0, ½] and the window
/// is mirrored about ½.
pub fn witness_threshold(noise: Noise, coeffs: &BellDiagonalCoeffs, s: f64) -> Result<ThresholdResult> {
    let op = weak_op(s)?;
    let x_basis = ProjectiveBasis::pauli_x();
    let z_basis = ProjectiveBasis::pauli_z();
    let threshold = -complementarity_c(&x_basis, &z_basis).log2();
    let f = |x: f64| -> Result<f64> {
        let rho = noisy_bell_state(coeffs, noise, x, Some(&op))?;
        Ok(uncertainty_lhs(&rho, &x_basis, &z_basis, Subsystem::A, Subsystem::B)? - threshold)
    };

    let (lo, hi) = match noise {
        Noise::AmplitudeDamping => (0.0, 1.0 - 1.0 / SCAN_POINTS as f64),
        Noise::BitPhaseFlip => (0.0, 0.5),
    };
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let mut a = lo;
    let mut fa = f(a)?;
    let mut bracket = None;
    for i in 1..SCAN_POINTS {
        let b = if i == SCAN_POINTS - 1 { hi } else { lo + i as f64 * step };
        let fb = f(b)?;
        if (fa < 0.0) != (fb < 0.0) {
            bracket = Some((a, b, fa));
            break;
        }
        a = b;
        fa = fb;
    }
    let (mut a, mut b, fa) = bracket.ok_or_else(|| {
        Error::NoThreshold(format!(
            "U - {threshold} keeps one sign for {} in [{lo}, {hi}] ({noise}, coeffs {coeffs}, s = {s})",
            noise.param_name()
        ))
    })?;
    let starts_witnessed = fa < 0.0;
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        if (f(m)? < 0.0) == starts_witnessed {
            a = m;
        } else {
            b = m;
        }
    }
    let critical = 0.5 * (a + b);

    let left = f((critical - BRACKET_H).max(0.0))?;
    let right = f((critical + BRACKET_H).min(1.0))?;
    if (left < 0.0) == (right < 0.0) {
        return Err(Error::Numeric(format!(
            "threshold {critical} is not bracketed at ±{BRACKET_H}: {left}, {right}"
        )));
    }

    let window = match (noise, starts_witnessed) {
        (Noise::AmplitudeDamping, true) => vec![Interval {
            lo: 0.0,
            hi: critical,
            lo_closed: true,
            hi_closed: false,
        }],
        (Noise::AmplitudeDamping, false) => vec![Interval {
            lo: critical,
            hi: 1.0,
            lo_closed: false,
            hi_closed: false,
        }],
        (Noise::BitPhaseFlip, true) => vec![
            Interval {
                lo: 0.0,
                hi: critical,
                lo_closed: true,
                hi_closed: false,
            },
            Interval {
                lo: 1.0 - critical,
                hi: 1.0,
                lo_closed: false,
                hi_closed: true,
            },
        ],
        (Noise::BitPhaseFlip, false) => vec![Interval {
            lo: critical,
            hi: 1.0 - critical,
            lo_closed: false,
            hi_closed: false,
        }],
    };
    Ok(ThresholdResult {
        parameter_name: noise.param_name(),
        critical_value: critical,
        steering_strength_s: s,
        window,
    })
}

/// Capacity of the state read as a channel resource: its mutual
/// information, checked against S(ρ_A) - (Berta bound at c = ½) + 1.
pub fn channel_capacity(rho: &ComplexMatrix) -> Result<f64> {
    let mi = mutual_information(rho)?;
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
    let via_bound = s_a - berta_bound(rho, 0.5)? + 1.0;
    if (mi - via_bound).abs() > tol::ORDER {
        return Err(Error::Numeric(format!(
            "capacity forms disagree: I = {mi}, S(A) - bound + 1 = {via_bound}"
        )));
    }
    Ok(mi)
}

/// Parameter schedule for [`capacity_curves`].
#[derive(Clone, Debug, PartialEq)]
pub enum Schedule {
    /// Amplitude damping driven by time at relaxation rate `rate`.
    Time { rate: f64, times: Vec<f64> },
    /// Channel parameter values directly.
    Parameter(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityPoint {
    /// Schedule coordinate: t for a time schedule, otherwise the channel
    /// parameter.
    pub x: f64,
    /// Channel parameter (d or p).
    pub param: f64,
    pub capacity: f64,
    /// Same capacity from the channel's closed-form spectra.
    pub closed_form: f64,
}

pub fn capacity_curves(noise: Noise, coeffs: &BellDiagonalCoeffs, schedule: &Schedule) -> Result<Vec<CapacityPoint>> {
    let points: Vec<(f64, f64)> = match (schedule, noise) {
        (Schedule::Time { rate, times }, Noise::AmplitudeDamping) => times
            .iter()
            .map(|&t| d_of_t(*rate, t).map(|d| (t, d)))
            .collect::<Result<_>>()?,
        (Schedule::Time { .. }, Noise::BitPhaseFlip) => {
            return Err(Error::Config(vec!["time schedules apply only to amplitude damping".into()]))
        }
        (Schedule::Parameter(grid), _) => grid.iter().map(|&x| (x, x)).collect(),
    };
    points
        .into_iter()
        .map(|(x, param)| {
            let rho = noisy_bell_state(coeffs, noise, param, None)?;
            Ok(CapacityPoint {
                x,
                param,
                capacity: channel_capacity(&rho)?,
                closed_form: capacity_closed_form(coeffs, noise, param),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::bell_diagonal_density;

    fn max_purity() -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::new(-1.0, 1.0, 1.0).unwrap()
    }

    fn verdict(rho: &ComplexMatrix) -> WitnessResult {
        witness_verdict(
            rho,
            &ProjectiveBasis::pauli_x(),
            &ProjectiveBasis::pauli_z(),
            Subsystem::A,
            Subsystem::B,
        )
        .unwrap()
    }

    #[test]
    fn witness_examples() {
        let bell = bell_diagonal_density(&BellDiagonalCoeffs::new(1.0, -1.0, 1.0).unwrap());
        let w = verdict(&bell);
        assert!(w.entangled_witnessed && w.u_value.abs() < 1e-12 && (w.threshold - 1.0).abs() < 1e-15);
        let w = verdict(&ComplexMatrix::identity(4).scale(0.25));
        assert!(!w.entangled_witnessed && (w.u_value - 2.0).abs() < 1e-12);
        let rho = noisy_bell_state(&max_purity(), Noise::AmplitudeDamping, 0.5, None).unwrap();
        assert!(!verdict(&rho).entangled_witnessed);
    }

    #[test]
    fn boundary_is_not_witnessed() {
        // |0⟩⟨0| ⊗ I/2: U = 1 exactly
        let rho = crate::channels::ground_tensor(&ComplexMatrix::identity(2).scale(0.5));
        let w = verdict(&rho);
        assert!((w.u_value - 1.0).abs() < 1e-12);
        assert!(!w.entangled_witnessed);
    }

    #[test]
    fn thresholds_bracket_and_mirror() {
        let t = witness_threshold(Noise::BitPhaseFlip, &max_purity(), 0.0).unwrap();
        assert_eq!(t.window.len(), 2);
        assert!((t.window[1].lo - (1.0 - t.critical_value)).abs() < 1e-15);
        let t = witness_threshold(Noise::AmplitudeDamping, &max_purity(), 0.0).unwrap();
        assert!(t.window[0].contains(0.0) && !t.window[0].contains(t.critical_value + 1e-3));
    }

    #[test]
    fn weak_measurement_moves_ad_threshold() {
        // Pipeline oracle: evaluated at s = 0 and s = 0.8, U at fixed d grows
        // with s here, so the window shrinks.
        let d0 = witness_threshold(Noise::AmplitudeDamping, &max_purity(), 0.0).unwrap().critical_value;
        let d8 = witness_threshold(Noise::AmplitudeDamping, &max_purity(), 0.8).unwrap().critical_value;
        assert!(d8 < d0, "{d8} vs {d0}");
    }

    #[test]
    fn never_witnessed_state_has_no_threshold() {
        let c = BellDiagonalCoeffs::new(0.1, 0.1, 0.1).unwrap();
        assert!(matches!(
            witness_threshold(Noise::AmplitudeDamping, &c, 0.0),
            Err(Error::NoThreshold(_))
        ));
    }

    #[test]
    fn capacity_examples() {
        let rho = noisy_bell_state(&max_purity(), Noise::AmplitudeDamping, 0.0, None).unwrap();
        assert!((channel_capacity(&rho).unwrap() - 2.0).abs() < 1e-12);
        let c = BellDiagonalCoeffs::new(1.0, 1.0, -1.0).unwrap();
        let rho = noisy_bell_state(&c, Noise::BitPhaseFlip, 0.5, None).unwrap();
        assert!((channel_capacity(&rho).unwrap() - 1.0).abs() < 1e-12);
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, 1.0, None).unwrap();
        assert!(channel_capacity(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn capacity_curves_cross_check() {
        let c = BellDiagonalCoeffs::new(1.0, 1.0, -1.0).unwrap();
        let times: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let curve = capacity_curves(Noise::AmplitudeDamping, &c, &Schedule::Time { rate: 0.1, times }).unwrap();
        assert!((curve[0].capacity - 2.0).abs() < 1e-12);
        for p in &curve {
            assert!((p.capacity - p.closed_form).abs() < 1e-10);
        }
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let curve = capacity_curves(Noise::BitPhaseFlip, &c, &Schedule::Parameter(grid)).unwrap();
        for (a, b) in curve.iter().zip(curve.iter().rev()) {
            assert!((a.capacity - b.capacity).abs() < 1e-10);
        }
        assert!(capacity_curves(Noise::BitPhaseFlip, &c, &Schedule::Time { rate: 1.0, times: vec![0.0] }).is_err());
    }
}
