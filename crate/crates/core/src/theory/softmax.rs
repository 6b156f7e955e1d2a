//! Softmax surrogate for the mean of a function at the argmax, and its
//! log-sum-exp potential.

use rayon::prelude::*;
use serde::Serialize;

use super::conditional::{build_conditional_gaussian, CyclostationarySampler};
use super::gumbel::GumbelConstants;
use crate::alignment::argmax_first;
use crate::error::{invalid, Result};
use crate::rng::{stream_rng, DOMAIN_SOFTMAX};
use crate::signal::TemplateSignal;
use crate::stats::{MeanEstimate, Moments};

fn check_pair(f: &[f64], mean: &[f64]) -> Result<()> {
    if f.is_empty() || f.len() != mean.len() {
        return Err(invalid("f and mean must share a nonzero length"));
    }
    if f.len() < 3 {
        return Err(invalid("need d >= 3"));
    }
    if f.iter().chain(mean).any(|v| !v.is_finite()) {
        return Err(invalid("f and mean must be finite"));
    }
    Ok(())
}

/// `Σ_ℓ f(ℓ) e^{a_d μ_ℓ} / Σ_ℓ e^{a_d μ_ℓ}` with `a_d = √(2 ln d)`.
pub fn softmax_expectation(f: &[f64], mean: &[f64]) -> Result<f64> {
    check_pair(f, mean)?;
    let a = GumbelConstants::new(f.len())?.a;
    let top = mean.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (mut num, mut den) = (0.0, 0.0);
    for (fv, m) in f.iter().zip(mean) {
        let w = (a * (m - top)).exp();
        num += fv * w;
        den += w;
    }
    Ok(num / den)
}

/// `m*(α) = a_d⁻¹ ln(d⁻¹ Σ_ℓ e^{a_d (μ_ℓ + α f(ℓ))})`.
pub fn m_star(mean: &[f64], f: &[f64], alpha: f64) -> Result<f64> {
    check_pair(f, mean)?;
    let d = f.len();
    let a = GumbelConstants::new(d)?.a;
    let shifted: Vec<f64> = mean.iter().zip(f).map(|(m, fv)| m + alpha * fv).collect();
    let top = shifted.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = shifted.iter().map(|s| (a * (s - top)).exp()).sum();
    Ok(top + (sum / d as f64).ln() / a)
}

#[derive(Debug, Clone, Serialize)]
pub struct SoftmaxComparison {
    pub softmax: f64,
    pub monte_carlo: MeanEstimate,
    pub max_abs_f: f64,
    /// `|softmax - E f(R̂)| / max_ℓ |f(ℓ)|`.
    pub relative_gap: f64,
}

/// Compare the softmax surrogate against Monte-Carlo `E[f(R̂) | N[k]]` for
/// `f(ℓ) = |N| cos(2πkℓ/d + φ_N - φ_X[k])`, `R̂` the argmax of the conditional process.
pub fn compare_softmax(
    template: &TemplateSignal,
    k: usize,
    noise_magnitude: f64,
    noise_phase: f64,
    draws: usize,
    seed: u64,
) -> Result<SoftmaxComparison> {
    if draws < 2 {
        return Err(invalid("need at least two draws"));
    }
    let cg = build_conditional_gaussian(template, k, noise_magnitude, noise_phase)?;
    let amp = 2.0 * template.magnitude(k) * noise_magnitude;
    let f: Vec<f64> = cg.mean().iter().map(|m| if amp > 0.0 { m * noise_magnitude / amp } else { 0.0 }).collect();
    let sampler = CyclostationarySampler::new(&cg)?;
    const CHUNK: usize = 1024;
    let chunks = draws.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c, 0, DOMAIN_SOFTMAX);
            let n = CHUNK.min(draws - c as usize * CHUNK);
            let mut buf = Vec::new();
            let mut m = Moments::default();
            for _ in 0..n {
                sampler.sample(&mut rng, &mut buf);
                m.push(f[argmax_first(&buf).0]);
            }
            m
        })
        .collect();
    let mut total = Moments::default();
    for p in &parts {
        total.merge(p);
    }
    let softmax = softmax_expectation(&f, cg.mean())?;
    let monte_carlo = total.estimate();
    let max_abs_f = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let relative_gap = if max_abs_f > 0.0 { (softmax - monte_carlo.mean).abs() / max_abs_f } else { 0.0 };
    Ok(SoftmaxComparison { softmax, monte_carlo, max_abs_f, relative_gap })
}
