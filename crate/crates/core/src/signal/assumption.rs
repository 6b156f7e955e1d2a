//! Autocorrelation and the finite-`d` proxies for the high-dimensional
//! regularity conditions on the template.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectrum::inverse_plan;
use super::template::TemplateSignal;
use crate::error::{invalid, Result};

/// Default tail fraction (of the largest circular lag `d/2`).
pub const DEFAULT_TAIL_FRACTION: f64 = 0.25;

/// Circular autocorrelation `R[ℓ] = Σ_i x_i x_{(i+ℓ) mod d}`, computed as the
/// inverse transform of the PSD. `R[0]` is the signal energy.
pub fn autocorrelation(template: &TemplateSignal) -> Vec<f64> {
    let d = template.d();
    let mut buf: Vec<Complex64> = template
        .coefficients()
        .iter()
        .map(|c| Complex64::new(c.norm_sqr(), 0.0))
        .collect();
    inverse_plan(d).process(&mut buf);
    buf.iter().map(|c| c.re).collect()
}

/// Finite-`d` diagnostic values. No verdict: the conditions are limits in `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Assumption1Diagnostic {
    /// `max |R[ℓ]| · ln d` over lags with circular distance `≥ tail_fraction · d/2`.
    pub tail_autocorrelation: f64,
    /// `max_{0<k<d} |X[k]| · sqrt(ln d)`.
    pub max_magnitude: f64,
    /// `|X[0]|`.
    pub dc_magnitude: f64,
}

/// Evaluate the three diagnostic proxies.
///
/// `tail_fraction` is measured against the largest circular lag `d/2`, so
/// `1.0` inspects only lag `d/2`.
pub fn check_assumption1(template: &TemplateSignal, tail_fraction: f64) -> Result<Assumption1Diagnostic> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(invalid(format!("tail fraction must lie in (0, 1], got {tail_fraction}")));
    }
    let d = template.d();
    let ln_d = (d as f64).ln();
    let r = autocorrelation(template);
    let min_lag = ((tail_fraction * (d / 2) as f64).ceil() as usize).max(1);
    let tail = (0..d)
        .filter(|&l| l.min(d - l) >= min_lag)
        .map(|l| r[l].abs())
        .fold(0.0, f64::max);
    let max_mag = template.spectrum().magnitudes()[1..].iter().cloned().fold(0.0, f64::max);
    Ok(Assumption1Diagnostic {
        tail_autocorrelation: tail * ln_d,
        max_magnitude: max_mag * ln_d.sqrt(),
        dc_magnitude: template.magnitude(0),
    })
}
