//! Quantum-memory-assisted entropic uncertainty for two-qubit Bell-diagonal
//! states whose measured qubit passes through a local noise channel.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: small dense complex matrices, partial traces and Hermitian
//!   spectra.
//! - [`states`]: the Bell-diagonal family and the X-state view of two-qubit
//!   density matrices.
//! - [`channels`]: amplitude damping and bit-phase flip Kraus channels, plus
//!   the filtering and weak-measurement steering operations.
//! - [`measures`]: entropies, mutual information, Holevo quantity, classical
//!   correlation and quantum discord.
//! - [`bounds`]: the uncertainty sum and its Berta, Pati and Adabi lower
//!   bounds, and closed-form cross-checks.
//! - [`applications`]: entropic entanglement witness and channel capacity.
//! - [`sweep`] and [`errata`]: parameter sweeps, CSV output, figure presets and
//!   the closed-form discrepancy report used by the `eur` binary.
//!
//! Entropies are in bits throughout. The default measurement pair is
//! σx / σz on qubit A with qubit B as the quantum memory.

pub mod applications;
pub mod bounds;
pub mod channels;
pub mod errata;
mod error;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod sweep;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianSpectrum, Subsystem};
pub use states::{BellDiagonalCoeffs, XState};

pub use num_complex::Complex64;
