//! Monte-Carlo moments of the aligned phase error at finite `d`.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::alignment::Aligner;
use crate::error::{invalid, Result};
use crate::rng::{stream_rng, DOMAIN_PHASE_MOMENTS};
use crate::signal::TemplateSignal;
use crate::stats::MeanEstimate;

pub const MIN_MOMENT_TRIALS: usize = 1000;

/// With `φ_e = 2πk R̂/d + φ_N[k] - φ_X[k]`, `A = |N[k]| sin φ_e` and
/// `B = |N[k]| cos φ_e`, the constant `C_k = E[A²] / E[B]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMoments {
    pub k: usize,
    pub mu_a: MeanEstimate,
    pub mu_b: MeanEstimate,
    pub second_moment_a: MeanEstimate,
    pub ck: f64,
    /// Delta-method standard error of `ck`.
    pub ck_stderr: f64,
}

#[derive(Debug, Clone, Default)]
struct Sums {
    n: f64,
    a: f64,
    a2: f64,
    a4: f64,
    b: f64,
    b2: f64,
    a2b: f64,
}

impl Sums {
    fn push(&mut self, a: f64, b: f64) {
        let a2 = a * a;
        self.n += 1.0;
        self.a += a;
        self.a2 += a2;
        self.a4 += a2 * a2;
        self.b += b;
        self.b2 += b * b;
        self.a2b += a2 * b;
    }

    fn merge(&mut self, o: &Sums) {
        self.n += o.n;
        self.a += o.a;
        self.a2 += o.a2;
        self.a4 += o.a4;
        self.b += o.b;
        self.b2 += o.b2;
        self.a2b += o.a2b;
    }

    fn finish(&self, k: usize) -> PhaseMoments {
        let n = self.n;
        let est = |s: f64, s2: f64| {
            let mean = s / n;
            let var = ((s2 - s * s / n) / (n - 1.0)).max(0.0);
            (mean, var)
        };
        let (ma, va) = est(self.a, self.a2);
        let (u, vu) = est(self.a2, self.a4);
        let (v, vv) = est(self.b, self.b2);
        let cov = (self.a2b - self.a2 * self.b / n) / (n - 1.0);
        let ck = u / (v * v);
        let var_ck = (vu / v.powi(4) + 4.0 * u * u * vv / v.powi(6) - 4.0 * u * cov / v.powi(5)) / n;
        let me = |mean: f64, var: f64| MeanEstimate { mean, stderr: (var / n).sqrt(), n: n as usize };
        PhaseMoments {
            k,
            mu_a: me(ma, va),
            mu_b: me(v, vv),
            second_moment_a: me(u, vu),
            ck,
            ck_stderr: var_ck.max(0.0).sqrt(),
        }
    }
}

const CHUNK: usize = 512;

/// Estimate the moments for all bins in `ks` from the same `trials` unit-variance draws.
pub fn phase_moments(template: &TemplateSignal, ks: &[usize], trials: usize, seed: u64) -> Result<Vec<PhaseMoments>> {
    if trials < MIN_MOMENT_TRIALS {
        return Err(invalid(format!("need at least {MIN_MOMENT_TRIALS} trials, got {trials}")));
    }
    let d = template.d();
    if let Some(k) = ks.iter().find(|&&k| k >= d) {
        return Err(invalid(format!("frequency {k} out of range for d = {d}")));
    }
    let aligner = Aligner::new(template)?;
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<Vec<Sums>> = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c, 0, DOMAIN_PHASE_MOMENTS);
            let n = CHUNK.min(trials - c as usize * CHUNK);
            let mut sums = vec![Sums::default(); ks.len()];
            let mut noise = vec![0.0; d];
            let mut spec: Vec<Complex64> = Vec::with_capacity(d);
            for _ in 0..n {
                for v in noise.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
                let shift = aligner.align_with_spectrum(&noise, &mut spec).expect("length checked");
                for (s, &k) in sums.iter_mut().zip(ks) {
                    let turn = 2.0 * std::f64::consts::PI * ((k * shift) % d) as f64 / d as f64;
                    let phi = turn + spec[k].arg() - template.phase(k);
                    let mag = spec[k].norm();
                    s.push(mag * phi.sin(), mag * phi.cos());
                }
            }
            sums
        })
        .collect();
    let mut total = vec![Sums::default(); ks.len()];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(total.iter().zip(ks).map(|(s, &k)| s.finish(k)).collect())
}

/// Single-bin convenience wrapper over [`phase_moments`].
pub fn estimate_ck(template: &TemplateSignal, k: usize, trials: usize, seed: u64) -> Result<PhaseMoments> {
    Ok(phase_moments(template, &[k], trials, seed)?.remove(0))
}
