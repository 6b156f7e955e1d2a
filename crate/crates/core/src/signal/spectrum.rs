//! Unitary DFT and the magnitude/phase view of a spectrum.
//!
//! The transform used throughout is `X[k] = d^{-1/2} Σ_l x_l e^{-2πj kl/d}`, so a
//! unit-norm signal has a unit-norm spectrum and Parseval holds without scale
//! factors.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Bins whose magnitude is below this fraction of the spectrum norm have their
/// phase pinned to zero.
pub const NULL_BIN_TOLERANCE: f64 = 1e-12;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn forward_plan(d: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(d))
}

pub(crate) fn inverse_plan(d: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(d))
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Per-frequency magnitudes and phases of a length-`d` spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralRepr {
    magnitudes: Vec<f64>,
    phases: Vec<f64>,
}

impl SpectralRepr {
    /// Build from complex coefficients. Phases of (numerically) null bins are 0.
    pub fn from_coefficients(coeffs: &[Complex64]) -> Self {
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let cutoff = NULL_BIN_TOLERANCE * norm;
        let mut magnitudes = Vec::with_capacity(coeffs.len());
        let mut phases = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let m = c.norm();
            magnitudes.push(m);
            phases.push(if m <= cutoff { 0.0 } else { wrap_phase(c.arg()) });
        }
        Self { magnitudes, phases }
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn magnitude(&self, k: usize) -> f64 {
        self.magnitudes[k]
    }

    pub fn phase(&self, k: usize) -> f64 {
        self.phases[k]
    }

    /// True when bin `k` carries no usable phase.
    pub fn is_null_bin(&self, k: usize) -> bool {
        let norm = self.energy().sqrt();
        self.magnitudes[k] <= NULL_BIN_TOLERANCE * norm
    }

    /// `Σ_k |X[k]|²`.
    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().map(|m| m * m).sum()
    }

    pub fn coefficient(&self, k: usize) -> Complex64 {
        Complex64::from_polar(self.magnitudes[k], self.phases[k])
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        (0..self.len()).map(|k| self.coefficient(k)).collect()
    }
}

/// Unitary DFT of a real signal as complex coefficients.
///
/// The upper half is mirrored from the lower half so the result is exactly
/// conjugate symmetric, and bins `0` and `d/2` are exactly real.
pub fn dft_complex(signal: &[f64]) -> Result<Vec<Complex64>> {
    let d = signal.len();
    if d == 0 {
        return Err(invalid("dft of an empty signal"));
    }
    let mut buf: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_plan(d).process(&mut buf);
    let scale = 1.0 / (d as f64).sqrt();
    for c in buf.iter_mut() {
        *c *= scale;
    }
    buf[0].im = 0.0;
    if d.is_multiple_of(2) {
        buf[d / 2].im = 0.0;
    }
    for k in 1..d.div_ceil(2) {
        buf[d - k] = buf[k].conj();
    }
    Ok(buf)
}

/// Unitary DFT of a real signal.
pub fn dft(signal: &[f64]) -> Result<SpectralRepr> {
    Ok(SpectralRepr::from_coefficients(&dft_complex(signal)?))
}

/// Inverse unitary DFT of complex coefficients; returns the real part.
pub fn idft_complex(coeffs: &[Complex64]) -> Result<Vec<f64>> {
    let d = coeffs.len();
    if d == 0 {
        return Err(invalid("idft of an empty spectrum"));
    }
    let mut buf = coeffs.to_vec();
    inverse_plan(d).process(&mut buf);
    let scale = 1.0 / (d as f64).sqrt();
    Ok(buf.iter().map(|c| c.re * scale).collect())
}

/// Inverse unitary DFT.
pub fn idft(spectrum: &SpectralRepr) -> Result<Vec<f64>> {
    idft_complex(&spectrum.coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_has_flat_spectrum() {
        let s = dft(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        for k in 0..4 {
            assert!((s.magnitude(k) - 0.5).abs() < 1e-15);
            assert_eq!(s.phase(k), 0.0);
        }
    }

    #[test]
    fn constant_puts_energy_in_dc() {
        let s = dft(&[0.5; 4]).unwrap();
        assert!((s.magnitude(0) - 1.0).abs() < 1e-15);
        for k in 1..4 {
            assert!(s.magnitude(k) < 1e-15);
            assert!(s.is_null_bin(k));
            assert_eq!(s.phase(k), 0.0);
        }
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(dft(&[]).is_err());
        assert!(idft_complex(&[]).is_err());
    }

    #[test]
    fn wrapping_rule() {
        assert!((wrap_phase(1.9 * PI) - (-0.1 * PI)).abs() < 1e-12);
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(-3.0 * PI / 2.0) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn real_bins_have_phase_zero_or_pi() {
        let s = dft(&[0.3, -1.2, 0.7, 0.1, -0.4, 2.0]).unwrap();
        for k in [0, 3] {
            let p = s.phase(k);
            assert!(p == 0.0 || p == PI, "bin {k} phase {p}");
        }
        for k in 1..6 {
            assert_eq!(s.magnitude(k), s.magnitude(6 - k));
            assert!((wrap_phase(s.phase(k) + s.phase(6 - k))).abs() < 1e-15);
        }
    }
}
