//! Bell-diagonal initial states and the X-state view of two-qubit density
//! matrices.

use std::fmt;

use num_complex::Complex64;

use crate::linalg::{self, partial_trace, tensor_product, ComplexMatrix, Subsystem};
use crate::tol;
use crate::{Error, Result};

/// Correlation coefficients (c1, c2, c3) = (⟨σx⊗σx⟩, ⟨σy⊗σy⟩, ⟨σz⊗σz⟩) of a
/// Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalCoeffs {
    c: [f64; 3],
}

const EIGEN_EXPRS: [&str; 4] = [
    "(1 - c1 - c2 - c3)/4",
    "(1 - c1 + c2 + c3)/4",
    "(1 + c1 - c2 + c3)/4",
    "(1 + c1 + c2 - c3)/4",
];

impl BellDiagonalCoeffs {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, v) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() || v.abs() > 1.0 + tol::PSD {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[-1, 1]",
                });
            }
        }
        let coeffs = Self { c: [c1, c2, c3] };
        for (expr, value) in EIGEN_EXPRS.iter().zip(coeffs.eigenvalues()) {
            if value < -tol::PSD {
                return Err(Error::UnphysicalCoeffs { expr, value });
            }
        }
        Ok(coeffs)
    }

    pub fn c1(&self) -> f64 {
        self.c[0]
    }

    pub fn c2(&self) -> f64 {
        self.c[1]
    }

    pub fn c3(&self) -> f64 {
        self.c[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.c
    }

    /// The four Bell-basis weights, in the order of the physicality
    /// conditions (not sorted).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let [c1, c2, c3] = self.c;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
        ]
    }
}

impl fmt::Display for BellDiagonalCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// ¼(I⊗I + Σ_j c_j σ_j⊗σ_j).
pub fn bell_diagonal_density(c: &BellDiagonalCoeffs) -> ComplexMatrix {
    let paulis = [
        ComplexMatrix::pauli_x(),
        ComplexMatrix::pauli_y(),
        ComplexMatrix::pauli_z(),
    ];
    let mut rho = ComplexMatrix::identity(4);
    for (cj, s) in c.as_array().iter().zip(&paulis) {
        rho = rho.add(&tensor_product(s, s).scale(*cj)).unwrap();
    }
    rho.scale(0.25)
}

/// Two-qubit density matrix supported on the diagonal and anti-diagonal.
///
/// Populations `d11..d44` and coherences `a14 = ρ(|00⟩,|11⟩)`,
/// `a23 = ρ(|01⟩,|10⟩)`, using 1-based labels for the basis
/// |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub d11: f64,
    pub d22: f64,
    pub d33: f64,
    pub d44: f64,
    pub a14: Complex64,
    pub a23: Complex64,
}

impl XState {
    pub fn new(populations: [f64; 4], a14: Complex64, a23: Complex64) -> Result<Self> {
        let [d11, d22, d33, d44] = populations;
        let x = Self {
            d11,
            d22,
            d33,
            d44,
            a14,
            a23,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let pops = self.populations();
        if pops.iter().any(|p| !p.is_finite()) || !self.a14.is_finite() || !self.a23.is_finite() {
            return Err(Error::NonFinite);
        }
        if let Some(p) = pops.iter().find(|&&p| p < -tol::PSD) {
            return Err(Error::InvalidXState(format!("negative population {p}")));
        }
        let sum: f64 = pops.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidXState(format!("populations sum to {sum}")));
        }
        let outer = (self.d11.max(0.0) * self.d44.max(0.0)).sqrt();
        if self.a14.norm() > outer + tol::PSD {
            return Err(Error::InvalidXState(format!(
                "|a14| = {} exceeds sqrt(d11 d44) = {outer}",
                self.a14.norm()
            )));
        }
        let inner = (self.d22.max(0.0) * self.d33.max(0.0)).sqrt();
        if self.a23.norm() > inner + tol::PSD {
            return Err(Error::InvalidXState(format!(
                "|a23| = {} exceeds sqrt(d22 d33) = {inner}",
                self.a23.norm()
            )));
        }
        Ok(())
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.d11, self.d22, self.d33, self.d44]
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::diag(&self.populations());
        m[(0, 3)] = self.a14;
        m[(3, 0)] = self.a14.conj();
        m[(1, 2)] = self.a23;
        m[(2, 1)] = self.a23.conj();
        m
    }

    /// Eigenvalues of the two 2x2 blocks, sorted descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (a, b) = linalg::eig2(self.d11, self.d44, self.a14.norm());
        let (c, d) = linalg::eig2(self.d22, self.d33, self.a23.norm());
        let mut v = [a, b, c, d];
        v.sort_by(|x, y| y.total_cmp(x));
        v
    }
}

/// Reads the X-state entries of a 4x4 density matrix.
pub fn as_xstate(rho: &ComplexMatrix) -> Result<XState> {
    linalg::ensure_two_qubit(rho)?;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 && rho[(i, j)].norm() > tol::X_PATTERN {
                return Err(Error::NotXState {
                    row: i,
                    col: j,
                    magnitude: rho[(i, j)].norm(),
                });
            }
        }
    }
    let max_asymmetry = rho.max_asymmetry();
    if max_asymmetry > tol::HERMITIAN {
        return Err(Error::NonHermitian { max_asymmetry });
    }
    XState::new(
        [rho[(0, 0)].re, rho[(1, 1)].re, rho[(2, 2)].re, rho[(3, 3)].re],
        rho[(0, 3)],
        rho[(1, 2)],
    )
}

/// Reduced single-qubit state; same contract as [`partial_trace`].
pub fn reduced_state(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    partial_trace(rho, keep)
}

/// Checks that `rho` is a 4x4 density matrix: Hermitian, unit trace and
/// positive semidefinite within tolerance.
pub fn ensure_density(rho: &ComplexMatrix) -> Result<()> {
    linalg::ensure_two_qubit(rho)?;
    linalg::hermitian_eigenvalues(rho)?.probabilities()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;

    fn fig1() -> BellDiagonalCoeffs {
        BellDiagonalCoeffs::new(-0.5, 0.4, 0.8).unwrap()
    }

    #[test]
    fn zero_coeffs_give_maximally_mixed() {
        let rho = bell_diagonal_density(&BellDiagonalCoeffs::new(0.0, 0.0, 0.0).unwrap());
        assert!(rho.max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-16);
    }

    #[test]
    fn pure_bell_state() {
        let rho = bell_diagonal_density(&BellDiagonalCoeffs::new(1.0, -1.0, 1.0).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [s.into(), 0.0.into(), 0.0.into(), s.into()];
        assert!(rho.max_abs_diff(&ComplexMatrix::projector(&phi)) < 1e-15);
    }

    #[test]
    fn fig1_entries_match_direct_assembly() {
        let x = as_xstate(&bell_diagonal_density(&fig1())).unwrap();
        // d11 = (1 + c3)/4, a14 = (c1 - c2)/4, a23 = (c1 + c2)/4
        assert!((x.d11 - 0.45).abs() < 1e-15);
        assert!((x.a14.re + 0.225).abs() < 1e-15);
        assert!((x.a23.re + 0.025).abs() < 1e-15);
        assert_eq!(x.a14.im, 0.0);
    }

    #[test]
    fn fig1_spectrum() {
        let spec = hermitian_eigenvalues(&bell_diagonal_density(&fig1())).unwrap();
        for (v, e) in spec.values().iter().zip([0.675, 0.225, 0.075, 0.025]) {
            assert!((v - e).abs() < 1e-15);
        }
    }

    #[test]
    fn unphysical_coeffs_name_the_expression() {
        let err = BellDiagonalCoeffs::new(1.0, 1.0, 1.0).unwrap_err();
        match err {
            Error::UnphysicalCoeffs { expr, value } => {
                assert_eq!(expr, "(1 - c1 - c2 - c3)/4");
                assert!((value + 0.5).abs() < 1e-15);
            }
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            BellDiagonalCoeffs::new(1.5, 0.0, 0.0),
            Err(Error::OutOfRange { name: "c1", .. })
        ));
    }

    #[test]
    fn as_xstate_rejects_off_pattern() {
        let mut m = ComplexMatrix::identity(4).scale(0.25);
        m[(0, 1)] = Complex64::new(0.01, 0.0);
        m[(1, 0)] = Complex64::new(0.01, 0.0);
        assert!(matches!(as_xstate(&m), Err(Error::NotXState { row: 0, col: 1, .. })));
    }

    #[test]
    fn as_xstate_of_mixed_state() {
        let x = as_xstate(&ComplexMatrix::identity(4).scale(0.25)).unwrap();
        assert_eq!(x.populations(), [0.25; 4]);
        assert_eq!(x.a14, Complex64::new(0.0, 0.0));
        assert_eq!(x.a23, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn xstate_positivity() {
        let bad = XState::new([0.25; 4], Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.0));
        assert!(matches!(bad, Err(Error::InvalidXState(_))));
    }

    #[test]
    fn reduced_states_of_bell_diagonal_are_maximally_mixed() {
        let rho = bell_diagonal_density(&fig1());
        let half = ComplexMatrix::identity(2).scale(0.5);
        for side in [Subsystem::A, Subsystem::B] {
            assert!(reduced_state(&rho, side).unwrap().max_abs_diff(&half) < 1e-15);
        }
    }
}
