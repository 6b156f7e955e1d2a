//! Closed-form and finite-`d` predictions for the phase MSE and magnitude.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::moments::phase_moments;
use crate::error::{EfnError, Result};
use crate::signal::TemplateSignal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeKind {
    Thm1FixedD,
    Thm2HighD,
}

impl RegimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeKind::Thm1FixedD => "thm1-fixed-d",
            RegimeKind::Thm2HighD => "thm2-high-d",
        }
    }
}

/// Which prediction to form. The fixed-`d` regime needs a Monte-Carlo budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    FixedD { trials: usize, seed: u64 },
    HighD,
}

impl Regime {
    pub fn kind(&self) -> RegimeKind {
        match self {
            Regime::FixedD { .. } => RegimeKind::Thm1FixedD,
            Regime::HighD => RegimeKind::Thm2HighD,
        }
    }
}

fn check_bin(template: &TemplateSignal, k: usize) -> Result<()> {
    if !template.has_phase(k) {
        return Err(EfnError::ExcludedBin { k });
    }
    Ok(())
}

/// `1 / (4 |X[k]|² M ln d)`.
pub fn high_d_phase_mse(template: &TemplateSignal, k: usize, m: u64) -> Result<f64> {
    check_bin(template, k)?;
    let x = template.magnitude(k);
    Ok(1.0 / (4.0 * x * x * m as f64 * (template.d() as f64).ln()))
}

/// `√(2 ln d) |X[k]|`.
pub fn high_d_magnitude(template: &TemplateSignal, k: usize) -> Result<f64> {
    if k >= template.d() {
        return Err(crate::error::invalid(format!("frequency {k} out of range")));
    }
    Ok((2.0 * (template.d() as f64).ln()).sqrt() * template.magnitude(k))
}

pub fn predict_phase_mse(template: &TemplateSignal, k: usize, m: u64, regime: Regime) -> Result<f64> {
    match regime {
        Regime::HighD => high_d_phase_mse(template, k, m),
        Regime::FixedD { trials, seed } => {
            check_bin(template, k)?;
            Ok(phase_moments(template, &[k], trials, seed)?[0].ck / m as f64)
        }
    }
}

pub fn predict_magnitude(template: &TemplateSignal, k: usize, regime: Regime) -> Result<f64> {
    match regime {
        Regime::HighD => high_d_magnitude(template, k),
        Regime::FixedD { trials, seed } => Ok(phase_moments(template, &[k], trials, seed)?[0].mu_b.mean),
    }
}

/// One row per frequency; `phase_mse` is `None` for bins without a phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionRow {
    pub k: usize,
    pub template_magnitude: f64,
    pub phase_mse: Option<f64>,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticPrediction {
    pub regime: RegimeKind,
    pub m: u64,
    pub rows: Vec<PredictionRow>,
}

/// Predictions for every `k` in `ks`; the fixed-`d` regime shares one batch of draws.
pub fn analytic_prediction(template: &TemplateSignal, ks: &[usize], m: u64, regime: Regime) -> Result<AnalyticPrediction> {
    let rows = match regime {
        Regime::HighD => ks
            .iter()
            .map(|&k| {
                Ok(PredictionRow {
                    k,
                    template_magnitude: template.magnitude(k),
                    phase_mse: high_d_phase_mse(template, k, m).ok(),
                    magnitude: high_d_magnitude(template, k)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Regime::FixedD { trials, seed } => phase_moments(template, ks, trials, seed)?
            .into_iter()
            .map(|pm| PredictionRow {
                k: pm.k,
                template_magnitude: template.magnitude(pm.k),
                phase_mse: template.has_phase(pm.k).then(|| pm.ck / m as f64),
                magnitude: pm.mu_b.mean,
            })
            .collect(),
    };
    Ok(AnalyticPrediction { regime: regime.kind(), m, rows })
}

impl AnalyticPrediction {
    /// Columns `k, template-magnitude, predicted-mse, predicted-magnitude, regime`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["k", "template-magnitude", "predicted-mse", "predicted-magnitude", "regime"])?;
        for r in &self.rows {
            let mse = r.phase_mse.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                r.k.to_string(),
                r.template_magnitude.to_string(),
                mse,
                r.magnitude.to_string(),
                self.regime.as_str().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
