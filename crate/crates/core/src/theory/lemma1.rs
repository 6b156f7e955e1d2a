//! Sign pattern of the argmax law under a symmetric pair of cosine means.
//!
//! `S₁ = Z + μ` and `S₂ = Z - μ` share the same draw `Z` from the circulant
//! covariance, so `P(R̂₁ = ℓ) - P(R̂₂ = ℓ)` is estimated from paired indicators.

use rayon::prelude::*;
use serde::Serialize;

use super::conditional::{build_conditional_gaussian, CyclostationarySampler};
use crate::alignment::argmax_first;
use crate::error::{invalid, EfnError, Result};
use crate::rng::{stream_rng, DOMAIN_LEMMA1};
use crate::signal::TemplateSignal;
use crate::stats::{MeanEstimate, Z_99_ONE_SIDED};

pub const MIN_SIGN_TRIALS: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct SignPatternReport {
    pub d: usize,
    pub k: usize,
    pub trials: usize,
    pub mean: Vec<f64>,
    pub p_plus: Vec<f64>,
    pub p_minus: Vec<f64>,
    /// Paired estimate of `P(R̂₁ = ℓ) - P(R̂₂ = ℓ)`.
    pub difference: Vec<MeanEstimate>,
    /// `E[μ(R̂₁)] - E[μ(R̂₂)]`.
    pub concentration: MeanEstimate,
}

impl SignPatternReport {
    /// Lags whose mean is nonzero and whose difference has the sign of the mean
    /// at one-sided 99% confidence.
    pub fn confirmed_lags(&self) -> Vec<bool> {
        self.mean
            .iter()
            .zip(&self.difference)
            .map(|(m, diff)| {
                if *m == 0.0 || diff.stderr == 0.0 {
                    return false;
                }
                m.signum() * diff.mean / diff.stderr > Z_99_ONE_SIDED
            })
            .collect()
    }

    pub fn fraction_confirmed(&self, min_abs_mean: f64) -> f64 {
        let confirmed = self.confirmed_lags();
        let eligible: Vec<bool> = self
            .mean
            .iter()
            .zip(&confirmed)
            .filter(|(m, _)| m.abs() > min_abs_mean)
            .map(|(_, c)| *c)
            .collect();
        if eligible.is_empty() {
            return 0.0;
        }
        eligible.iter().filter(|c| **c).count() as f64 / eligible.len() as f64
    }
}

/// Paired sign-pattern experiment with mean `μ_ℓ = cos(2πkℓ/d + φ)`.
pub fn lemma1_check(template: &TemplateSignal, k: usize, phi: f64, trials: usize, seed: u64) -> Result<SignPatternReport> {
    let d = template.d();
    if k >= d {
        return Err(invalid(format!("frequency {k} out of range for d = {d}")));
    }
    let mean = (0..d)
        .map(|l| (2.0 * std::f64::consts::PI * ((k * l) % d) as f64 / d as f64 + phi).cos())
        .collect();
    sign_pattern_with_mean(template, k, mean, trials, seed)
}

/// Same design with an arbitrary mean; the covariance still comes from `(template, k)`.
pub fn sign_pattern_with_mean(
    template: &TemplateSignal,
    k: usize,
    mean: Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<SignPatternReport> {
    if trials < MIN_SIGN_TRIALS {
        return Err(EfnError::InsufficientData(format!("need at least {MIN_SIGN_TRIALS} trials, got {trials}")));
    }
    let d = template.d();
    if mean.len() != d || mean.iter().any(|m| !m.is_finite()) {
        return Err(invalid("mean must be finite with length d"));
    }
    let centered = build_conditional_gaussian(template, k, 0.0, 0.0)?;
    let sampler = CyclostationarySampler::new(&centered)?;
    const CHUNK: usize = 4096;
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<(Vec<u64>, Vec<u64>, Vec<u64>, f64, f64)> = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c, 0, DOMAIN_LEMMA1);
            let n = CHUNK.min(trials - c as usize * CHUNK);
            let mut plus = vec![0u64; d];
            let mut minus = vec![0u64; d];
            let mut both = vec![0u64; d];
            let (mut conc, mut conc2) = (0.0, 0.0);
            let mut z = Vec::with_capacity(d);
            let mut s = vec![0.0; d];
            for _ in 0..n {
                sampler.sample_centered(&mut rng, &mut z);
                for ((o, zi), m) in s.iter_mut().zip(&z).zip(&mean) {
                    *o = zi + m;
                }
                let r1 = argmax_first(&s).0;
                for ((o, zi), m) in s.iter_mut().zip(&z).zip(&mean) {
                    *o = zi - m;
                }
                let r2 = argmax_first(&s).0;
                plus[r1] += 1;
                minus[r2] += 1;
                if r1 == r2 {
                    both[r1] += 1;
                }
                let c = mean[r1] - mean[r2];
                conc += c;
                conc2 += c * c;
            }
            (plus, minus, both, conc, conc2)
        })
        .collect();
    let mut plus = vec![0u64; d];
    let mut minus = vec![0u64; d];
    let mut both = vec![0u64; d];
    let (mut conc, mut conc2) = (0.0, 0.0);
    for (p, m, b, c, c2) in &parts {
        for l in 0..d {
            plus[l] += p[l];
            minus[l] += m[l];
            both[l] += b[l];
        }
        conc += c;
        conc2 += c2;
    }
    let n = trials as f64;
    let se = |s: f64, s2: f64| (((s2 - s * s / n) / (n - 1.0)).max(0.0) / n).sqrt();
    let difference = (0..d)
        .map(|l| {
            let s = plus[l] as f64 - minus[l] as f64;
            let s2 = (plus[l] + minus[l] - 2 * both[l]) as f64;
            MeanEstimate { mean: s / n, stderr: se(s, s2), n: trials }
        })
        .collect();
    Ok(SignPatternReport {
        d,
        k,
        trials,
        p_plus: plus.iter().map(|&c| c as f64 / n).collect(),
        p_minus: minus.iter().map(|&c| c as f64 / n).collect(),
        mean,
        difference,
        concentration: MeanEstimate { mean: conc / n, stderr: se(conc, conc2), n: trials },
    })
}
