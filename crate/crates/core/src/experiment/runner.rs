//! Seeded trials and their aggregation.

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, SweepAxis};
use crate::alignment::Aligner;
use crate::error::{invalid, Result};
use crate::estimator::{pearson_correlation, phase_error, EfnAccumulator, EfnEstimate};
use crate::rng::observation_rng;
use crate::signal::{fill_gaussian, generate_template, TemplateSignal};
use crate::stats::{MeanEstimate, Moments};
use crate::theory::{high_d_magnitude, high_d_phase_mse, phase_moments};

/// Measurements from one trial of `M` observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: u64,
    /// Wrapped phase error per configured frequency; `None` where the template has no phase.
    pub phase_errors: Vec<Option<f64>>,
    pub magnitudes: Vec<f64>,
    pub pearson: f64,
}

/// A validated config bound to its template and aligner.
#[derive(Debug)]
pub struct Experiment {
    config: ExperimentConfig,
    template: TemplateSignal,
    aligner: Aligner,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate().map_err(|e| invalid(e.to_string()))?;
        let template = generate_template(&config.template)?;
        let aligner = Aligner::new(&template)?;
        Ok(Self { config, template, aligner })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn template(&self) -> &TemplateSignal {
        &self.template
    }

    /// The aligned average for one trial.
    pub fn estimate(&self, trial: u64) -> Result<EfnEstimate> {
        let c = &self.config;
        let d = self.template.d();
        let mut acc = EfnAccumulator::new(&self.template, c.sigma)?;
        let mut noise = vec![0.0; d];
        for obs in 0..c.m {
            let mut rng = observation_rng(c.master_seed, trial, obs);
            fill_gaussian(&mut rng, c.sigma, &mut noise);
            acc.accumulate(&self.aligner, &noise)?;
        }
        acc.finalize()
    }

    pub fn run_trial(&self, trial: u64) -> Result<TrialResult> {
        let est = self.estimate(trial)?;
        let phase_errors = self
            .config
            .frequencies
            .iter()
            .map(|&k| if self.template.has_phase(k) { phase_error(&est, &self.template, k).map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        let magnitudes = self.config.frequencies.iter().map(|&k| est.spectrum().magnitude(k)).collect();
        let pearson = pearson_correlation(est.samples(), self.template.samples())?;
        Ok(TrialResult { trial, phase_errors, magnitudes, pearson })
    }

    /// All trials, computed in parallel and returned in trial order.
    pub fn run_trials(&self) -> Result<Vec<TrialResult>> {
        (0..self.config.trials as u64).into_par_iter().map(|t| self.run_trial(t)).collect()
    }

    /// Sequential fold of `trials` into aggregate statistics plus predictions.
    pub fn aggregate(&self, trials: &[TrialResult]) -> Result<AggregateStats> {
        let c = &self.config;
        let nk = c.frequencies.len();
        let mut pearson = Moments::default();
        let mut sq_err = vec![Moments::default(); nk];
        let mut mags = vec![Moments::default(); nk];
        for t in trials {
            pearson.push(t.pearson);
            for i in 0..nk {
                if let Some(e) = t.phase_errors[i] {
                    sq_err[i].push(e * e);
                }
                mags[i].push(t.magnitudes[i]);
            }
        }
        let fixed_d = if c.prediction_trials > 0 && nk > 0 {
            Some(phase_moments(&self.template, &c.frequencies, c.prediction_trials, c.master_seed)?)
        } else {
            None
        };
        let mut frequencies = Vec::with_capacity(nk);
        for (i, &k) in c.frequencies.iter().enumerate() {
            let included = self.template.has_phase(k) && sq_err[i].count() > 0;
            let phase_mse = included.then(|| sq_err[i].estimate());
            let magnitude = mags[i].estimate();
            let thm2_mse = if included { high_d_phase_mse(&self.template, k, c.m).ok() } else { None };
            let thm2_mag = c.sigma * high_d_magnitude(&self.template, k)?;
            let thm1 = fixed_d.as_ref().map(|v| v[i]);
            let thm1_mse = thm1.filter(|_| included).map(|pm| pm.ck / c.m as f64);
            let thm1_mag = thm1.map(|pm| MeanEstimate {
                mean: c.sigma * pm.mu_b.mean,
                stderr: c.sigma * pm.mu_b.stderr,
                n: pm.mu_b.n,
            });
            frequencies.push(FrequencyStats {
                k,
                template_magnitude: self.template.magnitude(k),
                phase_mse,
                magnitude,
                thm2_phase_mse: thm2_mse,
                thm2_mse_ratio: phase_mse.zip(thm2_mse).map(|(e, p)| e.mean / p),
                thm2_magnitude: thm2_mag,
                thm2_magnitude_ratio: magnitude.mean / thm2_mag,
                thm1_phase_mse: thm1_mse,
                thm1_mse_ratio: phase_mse.zip(thm1_mse).map(|(e, p)| e.mean / p),
                thm1_magnitude: thm1_mag,
                thm1_magnitude_ratio: thm1_mag.map(|p| magnitude.mean / p.mean),
            });
        }
        Ok(AggregateStats {
            d: self.template.d(),
            m: c.m,
            trials: trials.len(),
            sigma: c.sigma,
            pearson: pearson.estimate(),
            frequencies,
        })
    }

    pub fn run(&self) -> Result<AggregateStats> {
        let trials = self.run_trials()?;
        self.aggregate(&trials)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyStats {
    pub k: usize,
    pub template_magnitude: f64,
    /// Absent where the template has no phase.
    pub phase_mse: Option<MeanEstimate>,
    pub magnitude: MeanEstimate,
    pub thm2_phase_mse: Option<f64>,
    pub thm2_mse_ratio: Option<f64>,
    pub thm2_magnitude: f64,
    pub thm2_magnitude_ratio: f64,
    pub thm1_phase_mse: Option<f64>,
    pub thm1_mse_ratio: Option<f64>,
    pub thm1_magnitude: Option<MeanEstimate>,
    pub thm1_magnitude_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateStats {
    pub d: usize,
    pub m: u64,
    pub trials: usize,
    pub sigma: f64,
    pub pearson: MeanEstimate,
    pub frequencies: Vec<FrequencyStats>,
}

impl AggregateStats {
    pub fn frequency(&self, k: usize) -> Option<&FrequencyStats> {
        self.frequencies.iter().find(|f| f.k == k)
    }
}

pub fn run_trial(config: &ExperimentConfig, trial: u64) -> Result<TrialResult> {
    Experiment::new(config.clone())?.run_trial(trial)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<AggregateStats> {
    Experiment::new(config.clone())?.run()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub stats: AggregateStats,
}

/// Run every point of the config's sweep, in order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepPoint>> {
    let sweep = config.sweep.as_ref().ok_or_else(|| invalid("config has no sweep"))?;
    config.validate().map_err(|e| invalid(e.to_string()))?;
    sweep
        .values
        .iter()
        .map(|&value| {
            let point = config.at_sweep_value(sweep.axis, value);
            Ok(SweepPoint { value, stats: run_experiment(&point)? })
        })
        .collect()
}

/// Convenience: sweep one axis over `values` starting from `base`.
pub fn sweep_axis(base: &ExperimentConfig, axis: SweepAxis, values: &[f64]) -> Result<Vec<SweepPoint>> {
    let mut c = base.clone();
    c.sweep = Some(super::config::SweepSpec { axis, values: values.to_vec() });
    run_sweep(&c)
}
