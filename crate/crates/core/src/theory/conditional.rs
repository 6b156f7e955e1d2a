//! The correlation sequence conditioned on one noise Fourier coefficient:
//! a Gaussian vector with a cosine mean and a circulant covariance.

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::{stream_rng, DOMAIN_CYCLOSTATIONARY};
use crate::signal::{inverse_plan, TemplateSignal};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conditioning {
    pub k: usize,
    pub noise_magnitude: f64,
    pub noise_phase: f64,
}

/// `S | N[k] ~ N(μ_k, Σ_k)` with `Σ_k[r,s] = Σ_l w_l cos(2πl(r-s)/d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalGaussian {
    mean: Vec<f64>,
    /// `w_l = σ² |X̃_k[l]|²`; sums to one.
    spectral_weights: Vec<f64>,
    sigma2: f64,
    conditioning: Conditioning,
}

/// `|X̃_k[l]|²`: bins `k` and `d-k` removed, bins `0` and `d/2` kept, the rest doubled.
pub fn tilde_power(template: &TemplateSignal, k: usize) -> Vec<f64> {
    let d = template.d();
    (0..d)
        .map(|l| {
            let p = template.magnitude(l).powi(2);
            if l == k || l == (d - k) % d {
                0.0
            } else if l == 0 || l == d / 2 {
                p
            } else {
                2.0 * p
            }
        })
        .collect()
}

pub fn build_conditional_gaussian(
    template: &TemplateSignal,
    k: usize,
    noise_magnitude: f64,
    noise_phase: f64,
) -> Result<ConditionalGaussian> {
    let d = template.d();
    if k >= d {
        return Err(invalid(format!("frequency {k} out of range for d = {d}")));
    }
    if !(noise_magnitude.is_finite() && noise_magnitude >= 0.0 && noise_phase.is_finite()) {
        return Err(invalid("noise magnitude must be finite and nonnegative; phase finite"));
    }
    let power = tilde_power(template, k);
    let total: f64 = power.iter().sum();
    if total <= 0.0 {
        return Err(invalid(format!("template has no energy outside bins {k} and {}", (d - k) % d)));
    }
    let sigma2 = 1.0 / total;
    let amp = 2.0 * template.magnitude(k) * noise_magnitude;
    let offset = noise_phase - template.phase(k);
    let mean = (0..d)
        .map(|r| {
            let turn = 2.0 * std::f64::consts::PI * ((k * r) % d) as f64 / d as f64;
            amp * (turn + offset).cos()
        })
        .collect();
    Ok(ConditionalGaussian {
        mean,
        spectral_weights: power.iter().map(|p| p * sigma2).collect(),
        sigma2,
        conditioning: Conditioning { k, noise_magnitude, noise_phase },
    })
}

impl ConditionalGaussian {
    /// Assemble from explicit parts; weights must be nonnegative.
    pub fn from_parts(mean: Vec<f64>, spectral_weights: Vec<f64>, conditioning: Conditioning) -> Result<Self> {
        if mean.len() != spectral_weights.len() || mean.is_empty() {
            return Err(invalid("mean and spectral weights must share a nonzero length"));
        }
        if let Some(w) = spectral_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(invalid(format!("spectral weights must be nonnegative, found {w}")));
        }
        Ok(Self { mean, spectral_weights, sigma2: 1.0, conditioning })
    }

    pub fn d(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn spectral_weights(&self) -> &[f64] {
        &self.spectral_weights
    }

    /// The normalization `σ² = (Σ_l |X̃_k[l]|²)^{-1}`.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn conditioning(&self) -> Conditioning {
        self.conditioning
    }

    /// Replace the mean, keeping the covariance.
    pub fn with_mean(mut self, mean: Vec<f64>) -> Result<Self> {
        if mean.len() != self.d() {
            return Err(invalid("mean length must match d"));
        }
        self.mean = mean;
        Ok(self)
    }

    /// First row of the covariance: `c[m] = Σ_l w_l cos(2πlm/d)`.
    pub fn covariance_row(&self) -> Vec<f64> {
        let d = self.d();
        (0..d)
            .map(|m| {
                self.spectral_weights
                    .iter()
                    .enumerate()
                    .map(|(l, w)| w * (2.0 * std::f64::consts::PI * ((l * m) % d) as f64 / d as f64).cos())
                    .sum()
            })
            .collect()
    }

    /// Dense circulant covariance; `O(d²)`.
    pub fn covariance_matrix(&self) -> Vec<Vec<f64>> {
        let d = self.d();
        let row = self.covariance_row();
        (0..d).map(|r| (0..d).map(|s| row[(r + d - s) % d]).collect()).collect()
    }
}

/// Spectral-synthesis sampler: `Z_r = Σ_l √w_l (A_l cos(2πlr/d) + B_l sin(2πlr/d))`
/// with independent standard normal `A_l, B_l`, plus the mean.
pub struct CyclostationarySampler {
    mean: Vec<f64>,
    amplitudes: Vec<f64>,
    inverse: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl CyclostationarySampler {
    pub fn new(cg: &ConditionalGaussian) -> Result<Self> {
        if let Some(w) = cg.spectral_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(invalid(format!("negative spectral weight {w}")));
        }
        Ok(Self {
            mean: cg.mean.clone(),
            amplitudes: cg.spectral_weights.iter().map(|w| w.sqrt()).collect(),
            inverse: inverse_plan(cg.d()),
        })
    }

    pub fn d(&self) -> usize {
        self.mean.len()
    }

    /// Zero-mean draw from the covariance.
    pub fn sample_centered<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
        let mut buf: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&a| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(a * re, -a * im)
            })
            .collect();
        self.inverse.process(&mut buf);
        out.clear();
        out.extend(buf.iter().map(|c| c.re));
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
        self.sample_centered(rng, out);
        for (o, m) in out.iter_mut().zip(&self.mean) {
            *o += m;
        }
    }
}

/// One draw of the conditional process, deterministic in `seed`.
pub fn sample_cyclostationary(cg: &ConditionalGaussian, seed: u64) -> Result<Vec<f64>> {
    let sampler = CyclostationarySampler::new(cg)?;
    let mut rng = stream_rng(seed, 0, 0, DOMAIN_CYCLOSTATIONARY);
    let mut out = Vec::with_capacity(cg.d());
    sampler.sample(&mut rng, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{generate_template, SignalFamilySpec};

    #[test]
    fn delta_template_mean_and_weights() {
        let d = 16;
        let t = generate_template(&SignalFamilySpec::delta(d)).unwrap();
        let cg = build_conditional_gaussian(&t, 3, 1.5, 0.2).unwrap();
        let amp = 2.0 / (d as f64).sqrt() * 1.5;
        let peak = cg.mean().iter().cloned().fold(0.0, f64::max);
        assert!(peak <= amp + 1e-12 && peak > 0.9 * amp);
        let kept: Vec<f64> = cg
            .spectral_weights()
            .iter()
            .enumerate()
            .filter(|(l, _)| ![0, 8, 3, 13].contains(l))
            .map(|(_, w)| *w)
            .collect();
        assert!(kept.windows(2).all(|p| (p[0] - p[1]).abs() < 1e-15));
        assert_eq!(cg.spectral_weights()[3], 0.0);
        assert_eq!(cg.spectral_weights()[13], 0.0);
    }

    #[test]
    fn dc_bin_is_removed_once() {
        let t = generate_template(&SignalFamilySpec::delta(8)).unwrap();
        let cg = build_conditional_gaussian(&t, 0, 1.0, 0.0).unwrap();
        let w = cg.spectral_weights();
        assert_eq!(w[0], 0.0);
        assert!(w[1..].iter().all(|&v| v > 0.0));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_diagonal_is_one() {
        let t = generate_template(&SignalFamilySpec::power_law(8, 2.0, 5)).unwrap();
        for k in 0..8 {
            let cg = build_conditional_gaussian(&t, k, 0.7, -1.0).unwrap();
            let cov = cg.covariance_matrix();
            for (r, row) in cov.iter().enumerate() {
                assert!((row[r] - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_k_and_negative_weights() {
        let t = generate_template(&SignalFamilySpec::delta(8)).unwrap();
        assert!(build_conditional_gaussian(&t, 8, 1.0, 0.0).is_err());
        let c = Conditioning { k: 0, noise_magnitude: 0.0, noise_phase: 0.0 };
        assert!(ConditionalGaussian::from_parts(vec![0.0; 4], vec![0.5, -0.1, 0.3, 0.3], c).is_err());
    }

    #[test]
    fn zero_weights_give_the_mean() {
        let c = Conditioning { k: 0, noise_magnitude: 0.0, noise_phase: 0.0 };
        let cg = ConditionalGaussian::from_parts(vec![0.0; 8], vec![0.0; 8], c).unwrap();
        assert_eq!(sample_cyclostationary(&cg, 9).unwrap(), vec![0.0; 8]);
        let planted = cg.with_mean(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]).unwrap();
        assert_eq!(sample_cyclostationary(&planted, 9).unwrap(), planted.mean().to_vec());
    }
}
