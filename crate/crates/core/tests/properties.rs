use proptest::prelude::*;

use eur::applications::channel_capacity;
use eur::bounds::{adabi_bound, berta_bound, default_report, pati_bound, uncertainty_lhs};
use eur::channels::{apply_one_sided, noisy_bell_state, Noise, SteeringKind, SteeringOp};
use eur::linalg::{hermitian_eigenvalues, partial_trace, tensor_product, ComplexMatrix, Subsystem};
use eur::measures::{quantum_conditional_entropy, ProjectiveBasis};
use eur::states::bell_diagonal_density;
use eur::sweep::{csv_string, run_sweep, Grid, OutputTag, SweepConfig};
use eur::{BellDiagonalCoeffs, Complex64};

fn coeffs() -> impl Strategy<Value = BellDiagonalCoeffs> {
    (-1.0f64..=1.0, -1.0f64..=1.0, -1.0f64..=1.0)
        .prop_filter_map("unphysical", |(a, b, c)| BellDiagonalCoeffs::new(a, b, c).ok())
}

fn noise() -> impl Strategy<Value = Noise> {
    prop_oneof![Just(Noise::AmplitudeDamping), Just(Noise::BitPhaseFlip)]
}

fn qubit_density() -> impl Strategy<Value = ComplexMatrix> {
    (0.0f64..=1.0, -1.0f64..=1.0, -1.0f64..=1.0).prop_map(|(p, re, im)| {
        let off = Complex64::new(re, im) * 0.5 * (p * (1.0 - p)).sqrt() / Complex64::new(re, im).norm().max(1.0);
        ComplexMatrix::new(2, 2, vec![Complex64::new(p, 0.0), off, off.conj(), Complex64::new(1.0 - p, 0.0)]).unwrap()
    })
}

fn u(rho: &ComplexMatrix) -> f64 {
    uncertainty_lhs(
        rho,
        &ProjectiveBasis::pauli_x(),
        &ProjectiveBasis::pauli_z(),
        Subsystem::A,
        Subsystem::B,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_recovers_factors(a in qubit_density(), b in qubit_density()) {
        let ab = tensor_product(&a, &b);
        prop_assert!(partial_trace(&ab, Subsystem::A).unwrap().max_abs_diff(&a) < 1e-14);
        prop_assert!(partial_trace(&ab, Subsystem::B).unwrap().max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn spectrum_sums_to_trace(c in coeffs(), n in noise(), v in 0.0f64..=1.0) {
        let rho = noisy_bell_state(&c, n, v, None).unwrap();
        let spec = hermitian_eigenvalues(&rho).unwrap();
        prop_assert!((spec.sum() - 1.0).abs() < 1e-12);
        prop_assert!(spec.values().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn channels_preserve_density(c in coeffs(), n in noise(), v in 0.0f64..=1.0, on_b in any::<bool>()) {
        let side = if on_b { Subsystem::B } else { Subsystem::A };
        let out = apply_one_sided(&n.kraus(v).unwrap(), &bell_diagonal_density(&c), side).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        let spec = hermitian_eigenvalues(&out).unwrap();
        prop_assert!(*spec.values().last().unwrap() > -1e-12);
    }

    #[test]
    fn steering_keeps_unit_trace(c in coeffs(), v in 0.0f64..=1.0, k in 0.01f64..0.99, weak in any::<bool>()) {
        let op = if weak {
            SteeringOp::new(SteeringKind::Weak, k).unwrap()
        } else {
            SteeringOp::new(SteeringKind::Filter, k).unwrap()
        };
        let rho = noisy_bell_state(&c, Noise::AmplitudeDamping, v, Some(&op)).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adabi_equals_u_under_bpf(c in coeffs(), p in 0.0f64..=1.0) {
        let rho = noisy_bell_state(&c, Noise::BitPhaseFlip, p, None).unwrap();
        let a = adabi_bound(&rho, 0.5, &ProjectiveBasis::pauli_x(), &ProjectiveBasis::pauli_z(), Subsystem::A, Subsystem::B).unwrap();
        prop_assert!((u(&rho) - a).abs() <= 1e-9);
    }

    #[test]
    fn witness_implies_negative_conditional_entropy(c in coeffs(), n in noise(), v in 0.0f64..=1.0) {
        let rho = noisy_bell_state(&c, n, v, None).unwrap();
        if u(&rho) < 1.0 - 1e-9 {
            prop_assert!(quantum_conditional_entropy(&rho, Subsystem::B).unwrap() < 0.0);
        }
    }

    #[test]
    fn capacity_is_bounded_and_bpf_symmetric(c in coeffs(), p in 0.0f64..=1.0) {
        let at = |q: f64| channel_capacity(&noisy_bell_state(&c, Noise::BitPhaseFlip, q, None).unwrap()).unwrap();
        let cap = at(p);
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&cap));
        prop_assert!((cap - at(1.0 - p)).abs() < 1e-10);
    }

    #[test]
    fn spmc_saturates_berta(c1 in -1.0f64..=1.0, c3 in -1.0f64..=1.0) {
        let c = BellDiagonalCoeffs::new(c1, -c1 * c3, c3).unwrap();
        let rho = bell_diagonal_density(&c);
        prop_assert!((u(&rho) - berta_bound(&rho, 0.5).unwrap()).abs() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bounds_are_ordered(c in coeffs(), n in noise(), v in 0.0f64..=1.0) {
        let rho = noisy_bell_state(&c, n, v, None).unwrap();
        let b = berta_bound(&rho, 0.5).unwrap();
        let p = pati_bound(&rho, 0.5, Subsystem::A).unwrap();
        let a = adabi_bound(&rho, 0.5, &ProjectiveBasis::pauli_x(), &ProjectiveBasis::pauli_z(), Subsystem::A, Subsystem::B).unwrap();
        prop_assert!(b <= p + 1e-9 && p <= a + 1e-9 && a <= u(&rho) + 1e-9, "{b} {p} {a} {}", u(&rho));
    }

    #[test]
    fn berta_from_min_entropy_and_discord(c in coeffs()) {
        let r = default_report(&bell_diagonal_density(&c)).unwrap();
        prop_assert!((r.berta - (1.0 + r.s_min_cond - r.discord)).abs() <= 1e-8);
        prop_assert!(r.ordering_holds());
    }

    #[test]
    fn csv_round_trip(c in coeffs(), n in noise(), points in 2usize..6) {
        let cfg = SweepConfig {
            channel: n,
            coeffs: c,
            grid: Grid { start: 0.0, stop: 1.0, points },
            steering: None,
            rate_lambda: None,
            outputs: vec![OutputTag::U, OutputTag::Berta, OutputTag::Adabi, OutputTag::Capacity],
        };
        let rows = run_sweep(&cfg).unwrap();
        let csv = csv_string(&rows).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        prop_assert_eq!(lines.len(), points + 1);
        for (line, row) in lines[1..].iter().zip(&rows) {
            let fields: Vec<f64> = line.split(',').skip(5).map(|f| f.parse().unwrap()).collect();
            for (got, want) in fields.iter().zip(&row.values) {
                prop_assert!((got - want).abs() <= 1e-10);
            }
        }
    }
}
