//! Dense complex linear algebra for 2x2 and 4x4 matrices.
//!
//! Two-qubit matrices use the basis |00⟩, |01⟩, |10⟩, |11⟩ with qubit A as
//! the first tensor factor.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// One of the two qubits of a bipartite state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsystem::A => f.write_str("A"),
            Subsystem::B => f.write_str("B"),
        }
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1.0; n])
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::new(2, 2, vec![0.0.into(), -i, i, 0.0.into()]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::diag(&[1.0, -1.0])
    }

    /// Rank-one projector |v⟩⟨v| onto a (not necessarily normalized) vector.
    pub fn projector(v: &[Complex64]) -> Self {
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj() / norm2)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest |m_ij - conj(m_ji)|; zero for an exactly Hermitian matrix.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance to `other` (infinite on shape mismatch).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn ensure_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "hermitian check",
                left: self.dim(),
                right: (self.cols, self.rows),
            });
        }
        let max_asymmetry = self.max_asymmetry();
        if max_asymmetry > tol::HERMITIAN {
            return Err(Error::NonHermitian { max_asymmetry });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on incompatible shapes; use [`ComplexMatrix::matmul`] for a
    /// checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("incompatible matrix shapes")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    ComplexMatrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// Reduced state of the `keep` qubit of a 4x4 two-qubit matrix.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    ensure_two_qubit(rho)?;
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(2, 2, |a, a2| {
            (0..2).map(|b| rho[(2 * a + b, 2 * a2 + b)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(2, 2, |b, b2| {
            (0..2).map(|a| rho[(2 * a + b, 2 * a + b2)]).sum()
        }),
    };
    Ok(out)
}

/// `op · rho · op†`.
pub fn conjugate_sandwich(op: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !op.is_square() || !rho.is_square() || op.cols() != rho.rows() {
        return Err(Error::DimensionMismatch {
            op: "conjugate_sandwich",
            left: op.dim(),
            right: rho.dim(),
        });
    }
    op.matmul(rho)?.matmul(&op.adjoint())
}

/// Lifts a single-qubit operator to the two-qubit space, acting on `side`.
pub fn embed(op: &ComplexMatrix, side: Subsystem) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    match side {
        Subsystem::A => tensor_product(op, &id),
        Subsystem::B => tensor_product(&id, op),
    }
}

pub(crate) fn ensure_two_qubit(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != (4, 4) {
        return Err(Error::NotTwoQubit {
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    Ok(())
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSpectrum {
    values: Vec<f64>,
}

impl HermitianSpectrum {
    fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Checks the spectrum describes a density matrix and returns it clamped
    /// to [0, 1].
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        if let Some(&min) = self.values.last() {
            if min < -tol::PSD {
                return Err(Error::NotDensity(format!("negative eigenvalue {min:e}")));
            }
        }
        let sum = self.sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::NotDensity(format!("trace {sum}")));
        }
        Ok(self.values.iter().map(|v| v.clamp(0.0, 1.0)).collect())
    }
}

/// Eigenvalues of a Hermitian matrix.
///
/// 1x1 and 2x2 inputs use the quadratic formula. A 4x4 input with X structure
/// splits into the {|00⟩,|11⟩} and {|01⟩,|10⟩} blocks. Anything else goes
/// through cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    m.ensure_hermitian()?;
    let values = match m.rows() {
        1 => vec![m[(0, 0)].re],
        2 => {
            let (lo, hi) = eig2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)].norm());
            vec![hi, lo]
        }
        4 if is_x_pattern(m) => {
            let (a, b) = eig2(m[(0, 0)].re, m[(3, 3)].re, m[(0, 3)].norm());
            let (c, d) = eig2(m[(1, 1)].re, m[(2, 2)].re, m[(1, 2)].norm());
            vec![a, b, c, d]
        }
        _ => jacobi_eigenvalues(m),
    };
    Ok(HermitianSpectrum::from_unsorted(values))
}

/// Eigenvalues of [[a, b], [b*, d]] with |b| given, as (smaller, larger).
pub(crate) fn eig2(a: f64, d: f64, b_abs: f64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b_abs);
    (mean - radius, mean + radius)
}

fn is_x_pattern(m: &ComplexMatrix) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| i == j || i + j == 3 || m[(i, j)].norm() <= tol::X_PATTERN)
    })
}

/// Jacobi iteration on the real symmetric embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is that of the Hermitian input with every value doubled.
pub(crate) fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let n2 = 2 * n;
    let mut a = vec![0.0; n2 * n2];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            // symmetrize away any sub-tolerance asymmetry
            let w = 0.5 * (z + m[(j, i)].conj());
            a[i * n2 + j] = w.re;
            a[(i + n) * n2 + j + n] = w.re;
            a[(i + n) * n2 + j] = w.im;
            a[i * n2 + j + n] = -w.im;
        }
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n2 {
            for q in (p + 1)..n2 {
                off += a[p * n2 + q] * a[p * n2 + q];
            }
        }
        if off.sqrt() <= tol::EIGEN * scale {
            break;
        }
        for p in 0..n2 {
            for q in (p + 1)..n2 {
                let apq = a[p * n2 + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n2 + q] - a[p * n2 + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n2 {
                    let akp = a[k * n2 + p];
                    let akq = a[k * n2 + q];
                    a[k * n2 + p] = c * akp - s * akq;
                    a[k * n2 + q] = s * akp + c * akq;
                }
                for k in 0..n2 {
                    let apk = a[p * n2 + k];
                    let aqk = a[q * n2 + k];
                    a[p * n2 + k] = c * apk - s * aqk;
                    a[q * n2 + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut diag: Vec<f64> = (0..n2).map(|i| a[i * n2 + i]).collect();
    diag.sort_by(|x, y| y.total_cmp(x));
    // pairs are degenerate; average each pair
    diag.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}
