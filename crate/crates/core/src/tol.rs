//! Numerical tolerances shared by every module.
//!
//! All values are absolute and assume quantities of order one
//! (probabilities, matrix entries of density matrices, entropies in bits).

/// Hermiticity check on matrix entries.
pub const HERMITIAN: f64 = 1e-10;

/// Deviation of a density matrix trace (or probability sum) from one.
pub const TRACE: f64 = 1e-9;

/// Most negative eigenvalue or probability accepted as rounding noise.
pub const PSD: f64 = 1e-9;

/// Convergence target of the Jacobi eigenvalue iteration.
pub const EIGEN: f64 = 1e-12;

/// Magnitude below which entries outside the X pattern count as zero.
pub const X_PATTERN: f64 = 1e-12;

/// Kraus completeness and projector completeness.
pub const CPTP: f64 = 1e-12;

/// Smallest post-selection probability or measurement branch weight kept.
pub const NORM: f64 = 1e-12;

/// Slack on the ordering of lower bounds and on the witness inequality.
pub const ORDER: f64 = 1e-9;

/// Slack on the SPMC coefficient relation.
pub const SPMC: f64 = 1e-12;
