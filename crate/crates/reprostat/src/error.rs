//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for numerical, schema and I/O failures.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A root-finding bracket does not enclose a sign change.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// An integrand evaluated to a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A conditional expectation has vanishing conditioning probability.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// Calibration target cannot be bracketed.
    #[error("calibration error: {0}")]
    Calibration(String),

    /// An input table does not match the configured column map.
    #[error("schema error: {0}")]
    Schema(String),

    /// A Monte Carlo estimate is undefined (no qualifying draws).
    #[error("undefined estimate: {0}")]
    UndefinedEstimate(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed delimited input.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// Malformed configuration file.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code for the CLI: distinct classes get distinct codes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::Config(_) | Error::Csv(_) => 3,
            Error::Domain(_)
            | Error::Bracket(_)
            | Error::Evaluation(_)
            | Error::Conditioning(_)
            | Error::Calibration(_)
            | Error::UndefinedEstimate(_) => 4,
            Error::Io(_) => 5,
        }
    }
}
