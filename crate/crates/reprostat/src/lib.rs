//! Reproducibility modeling and two-stage power analysis.
//!
//! The library has three layers:
//!
//! - [`kernels`]: deterministic numerical primitives (standard-normal
//!   functions, quadrature of normal expectations, root finding, exact
//!   binomial intervals, Fisher and Wilcoxon tests);
//! - the model layer: [`repro`] (PPV algebra), [`power`] (two-stage
//!   type-II-error and sample-size-ratio calculus), [`mle`] (truncated
//!   effect-size MLE) and [`sim`] (seeded Monte Carlo cross-checks);
//! - the pipeline layer: [`ingest`] and [`reanalysis`] reproduce the
//!   replication-dataset reanalyses, [`contour`]/[`svg`]/[`report`] emit
//!   CSV, structured-text and SVG artifacts for the `reprostat` CLI.
//!
//! All computations are pure and deterministic: identical inputs (and, for
//! simulation, identical seeds) produce byte-identical outputs.

// reference values frozen from high-precision oracles keep their full digits
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod contour;
pub mod error;
pub mod ingest;
pub mod kernels;
pub mod mle;
pub mod power;
pub mod reanalysis;
pub mod report;
pub mod repro;
pub mod sim;
pub mod svg;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
