//! Monte-Carlo lab for template matching on pure noise.
//!
//! Aligning many pure-noise observations to a fixed template and averaging
//! them produces an estimate that converges toward the template's structure.
//! The crate provides the alignment and averaging pipeline, closed-form and
//! finite-dimension predictions for the phase error and magnitude, the
//! conditional Gaussian process behind them, and an experiment runner.
//!
//! Layout:
//!
//! - [`signal`]: DFT conventions, shifts, template families, noise.
//! - [`alignment`]: correlation sequences and argmax shift selection.
//! - [`estimator`]: the aligned average and phase statistics.
//! - [`theory`]: predictions, the conditional process, extreme-value helpers.
//! - [`experiment`]: configuration, seeded trials, sweeps, fits, presets.
//! - [`cli`]: the `efn` command.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod alignment;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod experiment;
pub mod rng;
pub mod signal;
pub mod stats;
pub mod theory;

pub use alignment::{estimate_shift, Aligner, AlignmentResult};
pub use error::{EfnError, Result};
pub use estimator::{efn_estimate, EfnAccumulator, EfnEstimate};
pub use signal::{generate_template, SignalFamily, SignalFamilySpec, TemplateSignal};
