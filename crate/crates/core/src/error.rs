use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported level scheme: {0}")]
    UnsupportedScheme(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("resonance condition violated: {0}")]
    ResonanceViolation(String),

    #[error("pulse sequence order violated: Stokes center {stokes} must precede pump center {pump}")]
    SequenceOrder { stokes: f64, pump: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("non-Hermitian matrix: max |H - H^dag| = {0:.3e}")]
    NonHermitian(f64),

    #[error("time grid does not cover pulse support: {0}")]
    GridCoverage(String),

    #[error("integration accuracy failure: {0}")]
    Accuracy(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gate input has {got} bits, expected {expected}")]
    GateInputLength { got: usize, expected: usize },

    #[error("z-step instability at z = {z}: {reason}")]
    ZStepInstability { z: f64, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
