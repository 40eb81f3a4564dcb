use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a two-qubit state: expected 4x4, got {rows}x{cols}")]
    NotTwoQubit { rows: usize, cols: usize },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix has {len} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NonHermitian { max_asymmetry: f64 },

    #[error("unphysical Bell-diagonal coefficients: {expr} = {value}")]
    UnphysicalCoeffs { expr: &'static str, value: f64 },

    #[error("not an X state: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXState { row: usize, col: usize, magnitude: f64 },

    #[error("invalid X state: {0}")]
    InvalidXState(String),

    #[error("{name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("Kraus operators are not complete (max deviation {deviation:e})")]
    IncompleteChannel { deviation: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("negative probability {0}")]
    NegativeProbability(f64),

    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("post-selection probability ≈ 0 ({0:e})")]
    VanishingNormalization(f64),

    #[error("invalid projective basis: {0}")]
    InvalidBasis(String),

    #[error("measured and memory subsystems must differ")]
    SameSubsystem,

    #[error("axis indices must be a permutation of 1, 2, 3; got ({0}, {1}, {2})")]
    BadAxes(usize, usize, usize),

    #[error("no threshold in range: {0}")]
    NoThreshold(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
