use std::collections::hash_map::DefaultHasher;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectrum::{dft_complex, idft_complex, SpectralRepr};
use crate::error::{invalid, EfnError, Result};

/// Minimum `|X[k]|` for `0 < k < d`, relative to the largest magnitude, for a
/// template to be used for alignment.
pub const DEFAULT_SPECTRUM_FLOOR: f64 = 1e-8;

/// A unit-norm, even-length template with its cached unitary spectrum.
#[derive(Debug, Clone)]
pub struct TemplateSignal {
    samples: Vec<f64>,
    coefficients: Vec<Complex64>,
    spectrum: SpectralRepr,
}

impl TemplateSignal {
    /// Normalize `samples` to unit Euclidean norm and cache the spectrum.
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        let d = samples.len();
        if d < 2 || !d.is_multiple_of(2) {
            return Err(invalid(format!("template length must be even and >= 2, got {d}")));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(invalid("template samples must be finite"));
        }
        let norm = samples.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(invalid("template has zero norm"));
        }
        for v in samples.iter_mut() {
            *v /= norm;
        }
        let coefficients = dft_complex(&samples)?;
        let spectrum = SpectralRepr::from_coefficients(&coefficients);
        Ok(Self { samples, coefficients, spectrum })
    }

    pub fn d(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn spectrum(&self) -> &SpectralRepr {
        &self.spectrum
    }

    /// Unitary DFT coefficients `X[k]`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn magnitude(&self, k: usize) -> f64 {
        self.spectrum.magnitude(k)
    }

    pub fn phase(&self, k: usize) -> f64 {
        self.spectrum.phase(k)
    }

    fn max_magnitude(&self) -> f64 {
        self.spectrum.magnitudes().iter().cloned().fold(0.0, f64::max)
    }

    /// Absolute magnitude floor: `DEFAULT_SPECTRUM_FLOOR` times the largest magnitude.
    pub fn magnitude_floor(&self) -> f64 {
        DEFAULT_SPECTRUM_FLOOR * self.max_magnitude()
    }

    /// `min_{0<k<d} |X[k]|`.
    pub fn min_nonzero_frequency_magnitude(&self) -> f64 {
        self.spectrum.magnitudes()[1..].iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Whether every non-DC bin exceeds `relative_floor` times the largest magnitude.
    pub fn is_non_vanishing(&self, relative_floor: f64) -> bool {
        self.min_nonzero_frequency_magnitude() > relative_floor * self.max_magnitude()
    }

    /// Error unless the template passes the default non-vanishing floor.
    pub fn ensure_alignable(&self) -> Result<()> {
        if self.is_non_vanishing(DEFAULT_SPECTRUM_FLOOR) {
            Ok(())
        } else {
            Err(EfnError::RejectedTemplate(format!(
                "min non-DC magnitude {:.3e} is below the floor {:.3e}",
                self.min_nonzero_frequency_magnitude(),
                self.magnitude_floor()
            )))
        }
    }

    /// Whether bin `k` has a template phase usable in phase statistics.
    pub fn has_phase(&self, k: usize) -> bool {
        k < self.d() && self.magnitude(k) > self.magnitude_floor()
    }

    /// Stable identifier derived from the sample bits.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for v in &self.samples {
            v.to_bits().hash(&mut h);
        }
        h.finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalFamily {
    /// `e_0`: flat spectrum.
    Delta,
    /// `|X[k]| ∝ (1 + min(k, d-k))^(-beta/2)` with random phases.
    PowerLaw,
    /// A power-law pulse occupying `d / (1 + pad_ratio)` samples, zeros elsewhere.
    ZeroPaddedPulse,
    /// Caller-provided samples.
    ExplicitSamples,
}

/// Recipe for building a template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalFamilySpec {
    pub family: SignalFamily,
    #[serde(default)]
    pub d: usize,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub pad_ratio: f64,
    #[serde(default)]
    pub phase_seed: u64,
    /// Force `X[0] = 0` (power-law and padded families).
    #[serde(default)]
    pub zero_dc: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<f64>>,
}

impl SignalFamilySpec {
    pub fn delta(d: usize) -> Self {
        Self {
            family: SignalFamily::Delta,
            d,
            beta: 0.0,
            pad_ratio: 0.0,
            phase_seed: 0,
            zero_dc: false,
            samples: None,
        }
    }

    pub fn power_law(d: usize, beta: f64, phase_seed: u64) -> Self {
        Self { family: SignalFamily::PowerLaw, beta, phase_seed, ..Self::delta(d) }
    }

    /// Flat (beta = 0) spectrum with zero DC: the Assumption-1 profile.
    pub fn flat_zero_dc(d: usize, phase_seed: u64) -> Self {
        Self { zero_dc: true, ..Self::power_law(d, 0.0, phase_seed) }
    }

    pub fn zero_padded_pulse(d: usize, pad_ratio: f64, beta: f64, phase_seed: u64) -> Self {
        Self {
            family: SignalFamily::ZeroPaddedPulse,
            pad_ratio,
            beta,
            phase_seed,
            ..Self::delta(d)
        }
    }

    pub fn explicit(samples: Vec<f64>) -> Self {
        Self {
            family: SignalFamily::ExplicitSamples,
            d: samples.len(),
            samples: Some(samples),
            ..Self::delta(0)
        }
    }

    pub fn with_zero_dc(mut self, zero_dc: bool) -> Self {
        self.zero_dc = zero_dc;
        self
    }

    /// Check the recipe; on failure returns `(field, message)`.
    pub fn check(&self) -> std::result::Result<(), (&'static str, String)> {
        if self.family == SignalFamily::ExplicitSamples {
            let n = self.samples.as_ref().map_or(0, Vec::len);
            if self.samples.is_none() {
                return Err(("samples", "explicit-samples family requires `samples`".into()));
            }
            if n < 2 || !n.is_multiple_of(2) {
                return Err(("samples", format!("sample count must be even and >= 2, got {n}")));
            }
            if self.d != 0 && self.d != n {
                return Err(("d", format!("d = {} does not match {} samples", self.d, n)));
            }
            return Ok(());
        }
        if self.d < 2 || !self.d.is_multiple_of(2) {
            return Err(("d", format!("d must be even and >= 2, got {}", self.d)));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(("beta", format!("beta must be a nonnegative number, got {}", self.beta)));
        }
        if !(self.pad_ratio.is_finite() && self.pad_ratio >= 0.0) {
            return Err(("pad_ratio", format!("pad_ratio must be nonnegative, got {}", self.pad_ratio)));
        }
        Ok(())
    }

    /// Effective signal length.
    pub fn len(&self) -> usize {
        match (&self.family, &self.samples) {
            (SignalFamily::ExplicitSamples, Some(s)) => s.len(),
            _ => self.d,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Unnormalized power-law magnitude of bin `k` in a length-`d` frame.
pub fn power_law_magnitude(k: usize, d: usize, beta: f64) -> f64 {
    let f = k.min(d - k) as f64;
    (1.0 + f).powf(-beta / 2.0)
}

fn power_law_samples(d: usize, beta: f64, phase_seed: u64, zero_dc: bool) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(phase_seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d];
    coeffs[0] = Complex64::new(if zero_dc { 0.0 } else { 1.0 }, 0.0);
    for k in 1..d / 2 {
        let phase = rng.random_range(-PI..PI);
        let c = Complex64::from_polar(power_law_magnitude(k, d, beta), phase);
        coeffs[k] = c;
        coeffs[d - k] = c.conj();
    }
    let nyquist_sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    coeffs[d / 2] += Complex64::new(nyquist_sign * power_law_magnitude(d / 2, d, beta), 0.0);
    idft_complex(&coeffs)
}

/// Build a template from its recipe. Deterministic in `phase_seed`.
pub fn generate_template(spec: &SignalFamilySpec) -> Result<TemplateSignal> {
    spec.check().map_err(|(field, msg)| invalid(format!("{field}: {msg}")))?;
    let samples = match spec.family {
        SignalFamily::Delta => {
            let mut s = vec![0.0; spec.d];
            s[0] = 1.0;
            s
        }
        SignalFamily::PowerLaw => power_law_samples(spec.d, spec.beta, spec.phase_seed, spec.zero_dc)?,
        SignalFamily::ZeroPaddedPulse => {
            let half = (spec.d as f64 / (2.0 * (1.0 + spec.pad_ratio))).round() as usize;
            let support = (2 * half).clamp(2, spec.d);
            let pulse = power_law_samples(support, spec.beta, spec.phase_seed, spec.zero_dc)?;
            let mut s = vec![0.0; spec.d];
            s[..support].copy_from_slice(&pulse);
            s
        }
        SignalFamily::ExplicitSamples => spec.samples.clone().unwrap_or_default(),
    };
    TemplateSignal::from_samples(samples)
}
