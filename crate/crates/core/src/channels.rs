//! Local noise channels and post-selected steering operations.

use std::fmt;
use std::str::FromStr;


use crate::linalg::{conjugate_sandwich, embed, ComplexMatrix, Subsystem};
use crate::states::{bell_diagonal_density, ensure_density, BellDiagonalCoeffs};
use crate::tol;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    AmplitudeDamping,
    BitPhaseFlip,
    Custom,
}

/// A single-qubit channel in Kraus form.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    kind: ChannelKind,
}

impl KrausChannel {
    /// Fails unless every operator is 2x2 and Σ E†E = I within 1e-12.
    pub fn new(operators: Vec<ComplexMatrix>, kind: ChannelKind) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::IncompleteChannel { deviation: 1.0 });
        }
        if let Some(op) = operators.iter().find(|op| op.dim() != (2, 2)) {
            return Err(Error::DimensionMismatch {
                op: "Kraus operator",
                left: op.dim(),
                right: (2, 2),
            });
        }
        let ch = Self { operators, kind };
        let deviation = ch.completeness_deviation();
        if deviation > tol::CPTP {
            return Err(Error::IncompleteChannel { deviation });
        }
        Ok(ch)
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// max |(Σ E†E - I)_ij|.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in &self.operators {
            sum = sum.add(&(&e.adjoint() * e)).unwrap();
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Amplitude damping with decay probability `d`:
/// E1 = diag(1, √(1-d)), E2 = √d |0⟩⟨1|.
pub fn ad_kraus(d: f64) -> Result<KrausChannel> {
    check_unit("d", d)?;
    let e1 = ComplexMatrix::diag(&[1.0, (1.0 - d).sqrt()]);
    let e2 = ComplexMatrix::from_real(2, 2, &[0.0, d.sqrt(), 0.0, 0.0])?;
    KrausChannel::new(vec![e1, e2], ChannelKind::AmplitudeDamping)
}

/// Decay probability after time `t` at relaxation rate `lambda`:
/// 1 - exp(-λt).
pub fn d_of_t(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            range: "[0, inf)",
        });
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    Ok(-(-lambda * t).exp_m1())
}

/// Bit-phase flip: no flip with probability `p`, σy with probability `1 - p`.
///
/// Maps Bell-diagonal (c1, c2, c3) to ((2p-1)c1, c2, (2p-1)c3).
pub fn bpf_kraus(p: f64) -> Result<KrausChannel> {
    check_unit("p", p)?;
    let e1 = ComplexMatrix::identity(2).scale(p.sqrt());
    let e2 = ComplexMatrix::pauli_y().scale((1.0 - p).sqrt());
    KrausChannel::new(vec![e1, e2], ChannelKind::BitPhaseFlip)
}

/// Same mixture as [`bpf_kraus`] but flipping with σx. Kept for comparison;
/// it leaves c1 invariant instead of c2.
pub fn bit_flip_kraus(p: f64) -> Result<KrausChannel> {
    check_unit("p", p)?;
    let e1 = ComplexMatrix::identity(2).scale(p.sqrt());
    let e2 = ComplexMatrix::pauli_x().scale((1.0 - p).sqrt());
    KrausChannel::new(vec![e1, e2], ChannelKind::Custom)
}

/// Σ_i (E_i on `side`) ρ (E_i on `side`)†.
pub fn apply_one_sided(ch: &KrausChannel, rho: &ComplexMatrix, side: Subsystem) -> Result<ComplexMatrix> {
    ensure_density(rho)?;
    let mut out = ComplexMatrix::zeros(4, 4);
    for e in ch.operators() {
        out = out.add(&conjugate_sandwich(&embed(e, side), rho)?)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteeringKind {
    Filter,
    Weak,
}

impl fmt::Display for SteeringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SteeringKind::Filter => "filter",
            SteeringKind::Weak => "weak",
        })
    }
}

impl FromStr for SteeringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "filter" => Ok(SteeringKind::Filter),
            "weak" => Ok(SteeringKind::Weak),
            other => Err(Error::Config(vec![format!(
                "unknown steering kind '{other}' (expected filter or weak)"
            )])),
        }
    }
}

/// Non-trace-preserving local operation applied with post-selection.
#[derive(Clone, Debug)]
pub struct SteeringOp {
    operator: ComplexMatrix,
    strength: f64,
    kind: SteeringKind,
}

impl SteeringOp {
    pub fn new(kind: SteeringKind, strength: f64) -> Result<Self> {
        match kind {
            SteeringKind::Filter => filter_op(strength),
            SteeringKind::Weak => weak_op(strength),
        }
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn kind(&self) -> SteeringKind {
        self.kind
    }
}

/// Filtering operation diag(√(1-k), √k), 0 < k < 1.
pub fn filter_op(k: f64) -> Result<SteeringOp> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: "(0, 1)",
        });
    }
    Ok(SteeringOp {
        operator: ComplexMatrix::diag(&[(1.0 - k).sqrt(), k.sqrt()]),
        strength: k,
        kind: SteeringKind::Filter,
    })
}

/// Weak measurement diag(1, √(1-s)), 0 ≤ s < 1 (s = 0 is the identity).
pub fn weak_op(s: f64) -> Result<SteeringOp> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "[0, 1)",
        });
    }
    Ok(SteeringOp {
        operator: ComplexMatrix::diag(&[1.0, (1.0 - s).sqrt()]),
        strength: s,
        kind: SteeringKind::Weak,
    })
}

/// (O⊗I) ρ (O⊗I)† / Tr[·], with O acting on `side`.
pub fn apply_steering(op: &SteeringOp, rho: &ComplexMatrix, side: Subsystem) -> Result<ComplexMatrix> {
    ensure_density(rho)?;
    let out = conjugate_sandwich(&embed(&op.operator, side), rho)?;
    let norm = out.trace().re;
    if norm <= tol::NORM {
        return Err(Error::VanishingNormalization(norm));
    }
    Ok(out.scale(1.0 / norm))
}

/// The two noise families acting on the measured qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Noise {
    AmplitudeDamping,
    BitPhaseFlip,
}

impl Noise {
    pub fn kraus(self, param: f64) -> Result<KrausChannel> {
        match self {
            Noise::AmplitudeDamping => ad_kraus(param),
            Noise::BitPhaseFlip => bpf_kraus(param),
        }
    }

    /// Parameter value at which the channel is the identity.
    pub fn identity_param(self) -> f64 {
        match self {
            Noise::AmplitudeDamping => 0.0,
            Noise::BitPhaseFlip => 1.0,
        }
    }

    pub fn param_name(self) -> &'static str {
        match self {
            Noise::AmplitudeDamping => "d",
            Noise::BitPhaseFlip => "p",
        }
    }
}

impl fmt::Display for Noise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Noise::AmplitudeDamping => "AD",
            Noise::BitPhaseFlip => "BPF",
        })
    }
}

impl FromStr for Noise {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AD" => Ok(Noise::AmplitudeDamping),
            "BPF" => Ok(Noise::BitPhaseFlip),
            other => Err(Error::Config(vec![format!(
                "unknown channel '{other}' (expected AD or BPF)"
            )])),
        }
    }
}

/// Bell-diagonal state whose qubit A went through `noise` at `param`, then
/// optionally through a steering operation on A.
pub fn noisy_bell_state(
    coeffs: &BellDiagonalCoeffs,
    noise: Noise,
    param: f64,
    steering: Option<&SteeringOp>,
) -> Result<ComplexMatrix> {
    let rho = bell_diagonal_density(coeffs);
    let rho = apply_one_sided(&noise.kraus(param)?, &rho, Subsystem::A)?;
    match steering {
        Some(op) => apply_steering(op, &rho, Subsystem::A),
        None => Ok(rho),
    }
}

/// |0⟩⟨0| on A tensored with `rest`; handy for limiting cases.
#[cfg(test)]
pub(crate) fn ground_tensor(rest: &ComplexMatrix) -> ComplexMatrix {
    crate::linalg::tensor_product(&ComplexMatrix::diag(&[1.0, 0.0]), rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::as_xstate;

    fn fig1() -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::new(-0.5, 0.4, 0.8).unwrap()
    }

    #[test]
    fn ad_at_zero_is_identity() {
        let rho = bell_diagonal_density(&fig1());
        let out = apply_one_sided(&ad_kraus(0.0).unwrap(), &rho, Subsystem::A).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-16);
    }

    #[test]
    fn ad_full_decay_to_ground() {
        let ch = ad_kraus(1.0).unwrap();
        let excited = ComplexMatrix::diag(&[0.0, 1.0]);
        let mut out = ComplexMatrix::zeros(2, 2);
        for e in ch.operators() {
            out = out.add(&conjugate_sandwich(e, &excited).unwrap()).unwrap();
        }
        assert_eq!(out, ComplexMatrix::diag(&[1.0, 0.0]));

        // explicit Kraus sum on the two-qubit state
        let rho = bell_diagonal_density(&fig1());
        let out = apply_one_sided(&ch, &rho, Subsystem::A).unwrap();
        let expected = ground_tensor(&ComplexMatrix::identity(2).scale(0.5));
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn decay_probability_from_time() {
        assert_eq!(d_of_t(0.3, 0.0).unwrap(), 0.0);
        assert_eq!(d_of_t(0.0, 5.0).unwrap(), 0.0);
        assert!((d_of_t(0.7, 10.0).unwrap() - (1.0 - (-7.0f64).exp())).abs() < 1e-15);
        assert!((d_of_t(0.7, 10.0).unwrap() - 0.999088).abs() < 1e-6);
        assert!((d_of_t(0.3, 0.7).unwrap() - 0.189416).abs() < 1e-6);
        assert!(d_of_t(-0.1, 1.0).is_err());
        assert!(d_of_t(0.1, -1.0).is_err());
    }

    #[test]
    fn parameters_out_of_range() {
        assert!(ad_kraus(-0.01).is_err());
        assert!(ad_kraus(1.01).is_err());
        assert!(bpf_kraus(1.5).is_err());
        assert!(filter_op(0.0).is_err());
        assert!(filter_op(1.0).is_err());
        assert!(weak_op(1.0).is_err());
        assert!(weak_op(-0.1).is_err());
    }

    #[test]
    fn incomplete_channel_rejected() {
        let err = KrausChannel::new(vec![ComplexMatrix::diag(&[1.0, 0.5])], ChannelKind::Custom);
        assert!(matches!(err, Err(Error::IncompleteChannel { .. })));
    }

    #[test]
    fn ad_elements_match_closed_forms() {
        let (c1, c2, c3) = (-0.5, 0.4, 0.8);
        for d in [0.0, 0.1, 0.37, 0.8, 1.0] {
            let rho = noisy_bell_state(&fig1(), Noise::AmplitudeDamping, d, None).unwrap();
            let x = as_xstate(&rho).unwrap();
            let expected = [
                (1.0 + c3 + d - c3 * d) / 4.0,
                (1.0 + c3 * (d - 1.0) + d) / 4.0,
                (c3 - 1.0) * (d - 1.0) / 4.0,
                -(1.0 + c3) * (d - 1.0) / 4.0,
            ];
            for (got, want) in x.populations().iter().zip(expected) {
                assert!((got - want).abs() < 1e-12);
            }
            assert!((x.a14.re - (c1 - c2) * (1.0 - d).sqrt() / 4.0).abs() < 1e-12);
            assert!((x.a23.re - (c1 + c2) * (1.0 - d).sqrt() / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bpf_identity_and_midpoint() {
        let rho = bell_diagonal_density(&fig1());
        let out = apply_one_sided(&bpf_kraus(1.0).unwrap(), &rho, Subsystem::A).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-16);

        let out = apply_one_sided(&bpf_kraus(0.5).unwrap(), &rho, Subsystem::A).unwrap();
        let expected = bell_diagonal_density(&BellDiagonalCoeffs::new(0.0, 0.4, 0.0).unwrap());
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn bpf_population_at_p02() {
        let rho = noisy_bell_state(&fig1(), Noise::BitPhaseFlip, 0.2, None).unwrap();
        assert!((rho[(0, 0)].re - 0.13).abs() < 1e-15);
    }

    #[test]
    fn sigma_x_variant_keeps_c1() {
        let rho = bell_diagonal_density(&fig1());
        let out = apply_one_sided(&bit_flip_kraus(0.5).unwrap(), &rho, Subsystem::A).unwrap();
        let expected = bell_diagonal_density(&BellDiagonalCoeffs::new(-0.5, 0.0, 0.0).unwrap());
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn filter_and_weak_operators() {
        let f = filter_op(0.5).unwrap();
        assert!(f.operator().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5f64.sqrt())) < 1e-16);
        let f = filter_op(0.2).unwrap();
        assert!(f.operator().max_abs_diff(&ComplexMatrix::diag(&[0.8f64.sqrt(), 0.2f64.sqrt()])) < 1e-16);
        assert_eq!(weak_op(0.0).unwrap().operator(), &ComplexMatrix::identity(2));
        let w = weak_op(0.4).unwrap();
        assert!(w.operator().max_abs_diff(&ComplexMatrix::diag(&[1.0, 0.6f64.sqrt()])) < 1e-16);
    }

    #[test]
    fn steering_limits_concentrate_on_ground() {
        let rho = bell_diagonal_density(&fig1());
        for op in [filter_op(1e-9).unwrap(), weak_op(1.0 - 1e-9).unwrap()] {
            let out = apply_steering(&op, &rho, Subsystem::A).unwrap();
            let a = crate::linalg::partial_trace(&out, Subsystem::A).unwrap();
            assert!(a[(0, 0)].re > 1.0 - 1e-8, "{:?}", a);
        }
    }

    #[test]
    fn trivial_steering_preserves_state() {
        let rho = noisy_bell_state(&fig1(), Noise::AmplitudeDamping, 0.3, None).unwrap();
        for op in [filter_op(0.5).unwrap(), weak_op(0.0).unwrap()] {
            let out = apply_steering(&op, &rho, Subsystem::A).unwrap();
            assert!(out.max_abs_diff(&rho) < 1e-15);
        }
    }

    #[test]
    fn filter_after_ad_matches_closed_form() {
        let (c3, d, k) = (0.8, 0.35, 0.3);
        let rho = noisy_bell_state(&fig1(), Noise::AmplitudeDamping, d, Some(&filter_op(k).unwrap())).unwrap();
        let want = (1.0 + c3 + d - c3 * d) * (1.0 - k) / (2.0 * (1.0 + d - 2.0 * d * k));
        assert!((rho[(0, 0)].re - want).abs() < 1e-12);
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vanishing_post_selection() {
        let excited = crate::linalg::tensor_product(
            &ComplexMatrix::diag(&[0.0, 1.0]),
            &ComplexMatrix::identity(2).scale(0.5),
        );
        let err = apply_steering(&filter_op(1e-14).unwrap(), &excited, Subsystem::A).unwrap_err();
        assert!(err.to_string().contains("post-selection probability ≈ 0"));
    }

    #[test]
    fn noise_names_round_trip() {
        for n in [Noise::AmplitudeDamping, Noise::BitPhaseFlip] {
            assert_eq!(n.to_string().parse::<Noise>().unwrap(), n);
        }
        assert!("XX".parse::<Noise>().is_err());
    }
}
