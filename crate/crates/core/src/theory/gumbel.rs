//! Extreme-value constants for the maximum of `d` Gaussians.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::rng::{stream_rng, DOMAIN_GUMBEL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GumbelConstants {
    pub d: usize,
    pub a: f64,
    pub b: f64,
}

impl GumbelConstants {
    /// `a_d = √(2 ln d)`, `b_d = a_d - (ln ln d + ln 4π) / (2 a_d)`.
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(invalid(format!("Gumbel constants need d >= 3, got {d}")));
        }
        let ln_d = (d as f64).ln();
        let a = (2.0 * ln_d).sqrt();
        let b = a - (ln_d.ln() + (4.0 * std::f64::consts::PI).ln()) / (2.0 * a);
        Ok(Self { d, a, b })
    }

    pub fn normalize(&self, max: f64) -> f64 {
        self.a * (max - self.b)
    }
}

/// Standard Gumbel CDF `exp(-e^{-x})`.
pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// Normalized maxima `a_d (max_i g_i - b_d)` over `replicates` independent draws.
pub fn normalized_gaussian_maxima(d: usize, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    let c = GumbelConstants::new(d)?;
    Ok((0..replicates as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r, 0, DOMAIN_GUMBEL);
            let max = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).fold(f64::NEG_INFINITY, f64::max);
            c.normalize(max)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_at_1024() {
        let c = GumbelConstants::new(1024).unwrap();
        assert!((c.a - 3.723297411).abs() < 1e-8);
        assert!((c.b - 3.1234129637).abs() < 1e-8);
        assert!(GumbelConstants::new(2).is_err());
    }

    #[test]
    fn cdf_values() {
        assert!((gumbel_cdf(0.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(gumbel_cdf(-10.0) < 1e-9);
        assert!(gumbel_cdf(30.0) > 1.0 - 1e-12);
    }
}
