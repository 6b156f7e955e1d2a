use rand::Rng;
use rand_distr::StandardNormal;

use super::spectrum::{dft, SpectralRepr};
use crate::error::{invalid, Result};

/// Fill `out` with i.i.d. `N(0, sigma²)` draws.
pub fn fill_gaussian<R: Rng + ?Sized>(rng: &mut R, sigma: f64, out: &mut [f64]) {
    for v in out.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *v = sigma * z;
    }
}

/// One white-Gaussian observation and its spectrum.
#[derive(Debug, Clone)]
pub struct NoiseSample {
    samples: Vec<f64>,
    spectrum: SpectralRepr,
    sigma: f64,
}

impl NoiseSample {
    pub fn draw<R: Rng + ?Sized>(d: usize, sigma: f64, rng: &mut R) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        let mut samples = vec![0.0; d];
        fill_gaussian(rng, sigma, &mut samples);
        Self::from_samples(samples, sigma)
    }

    /// Wrap existing samples; `sigma` records the generating standard deviation.
    pub fn from_samples(samples: Vec<f64>, sigma: f64) -> Result<Self> {
        let spectrum = dft(&samples)?;
        Ok(Self { samples, spectrum, sigma })
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

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl AsRef<[f64]> for NoiseSample {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}
