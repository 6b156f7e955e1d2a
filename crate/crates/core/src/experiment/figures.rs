//! Desk-scale presets for the one-dimensional figure analogs.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::config::{ExperimentConfig, SweepAxis};
use super::runner::{run_experiment, sweep_axis};
use crate::error::{invalid, Result};
use crate::signal::SignalFamilySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FigureId {
    #[serde(rename = "2b")]
    PhaseMseByFrequency,
    #[serde(rename = "2c")]
    PhaseMseRate,
    #[serde(rename = "3")]
    PsdEffect,
    #[serde(rename = "4b")]
    DimensionEffect,
    #[serde(rename = "4c")]
    HighDimensionRatio,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::PhaseMseByFrequency,
        FigureId::PhaseMseRate,
        FigureId::PsdEffect,
        FigureId::DimensionEffect,
        FigureId::HighDimensionRatio,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::PhaseMseByFrequency => "2b",
            FigureId::PhaseMseRate => "2c",
            FigureId::PsdEffect => "3",
            FigureId::DimensionEffect => "4b",
            FigureId::HighDimensionRatio => "4c",
        }
    }
}

impl FromStr for FigureId {
    type Err = crate::error::EfnError;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown figure `{s}`; expected one of 2b, 2c, 3, 4b, 4c")))
    }
}

/// Optional overrides of a preset's size parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FigureOptions {
    pub d: Option<usize>,
    pub m: Option<u64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

/// Plot-ready rows plus the configs that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureTable {
    pub figure: FigureId,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub configs: Vec<ExperimentConfig>,
}

impl FigureTable {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

pub const M_SWEEP: [f64; 4] = [200.0, 500.0, 1500.0, 5000.0];

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn base(spec: SignalFamilySpec, m: u64, trials: usize, opts: &FigureOptions) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(spec, opts.m.unwrap_or(m), opts.trials.unwrap_or(trials), opts.seed.unwrap_or(2024));
    c.prediction_trials = 0;
    c
}

pub fn run_figure(id: FigureId, opts: &FigureOptions) -> Result<FigureTable> {
    match id {
        FigureId::PhaseMseByFrequency | FigureId::PhaseMseRate => m_sweep_figure(id, opts),
        FigureId::PsdEffect => psd_figure(opts),
        FigureId::DimensionEffect => dimension_figure(opts),
        FigureId::HighDimensionRatio => ratio_figure(opts),
    }
}

fn m_sweep_figure(id: FigureId, opts: &FigureOptions) -> Result<FigureTable> {
    let d = opts.d.unwrap_or(1024);
    let c = base(SignalFamilySpec::power_law(d, 1.0, 7), 0, 200, opts).with_frequencies((1..=(d / 16).max(1)).collect());
    let ms: Vec<f64> = match opts.m {
        Some(m) => vec![m as f64],
        None => M_SWEEP.to_vec(),
    };
    let points = sweep_axis(&c, SweepAxis::M, &ms)?;
    let with_pred = id == FigureId::PhaseMseRate;
    let mut names = vec!["M", "k", "mse", "stderr"];
    if with_pred {
        names.push("thm2-prediction");
    }
    let mut rows = Vec::new();
    for p in &points {
        for f in &p.stats.frequencies {
            let Some(mse) = f.phase_mse else { continue };
            let mut row = vec![p.stats.m.to_string(), f.k.to_string(), mse.mean.to_string(), mse.stderr.to_string()];
            if with_pred {
                row.push(f.thm2_phase_mse.map(|v| v.to_string()).unwrap_or_default());
            }
            rows.push(row);
        }
    }
    let configs = ms.iter().map(|&m| c.at_sweep_value(SweepAxis::M, m)).collect();
    Ok(FigureTable { figure: id, header: header(&names), rows, configs })
}

fn psd_figure(opts: &FigureOptions) -> Result<FigureTable> {
    let d = opts.d.unwrap_or(1024);
    let mut configs = Vec::new();
    for beta in [2.0, 1.0, 0.0] {
        configs.push(("beta", beta, base(SignalFamilySpec::power_law(d, beta, 7), 1000, 200, opts)));
    }
    for pad in [0.0, 1.0, 3.0] {
        configs.push(("pad-ratio", pad, base(SignalFamilySpec::zero_padded_pulse(d, pad, 2.0, 7), 1000, 200, opts)));
    }
    let mut rows = Vec::new();
    for (axis, value, c) in &configs {
        let s = run_experiment(c)?;
        rows.push(vec![axis.to_string(), value.to_string(), s.pearson.mean.to_string(), s.pearson.stderr.to_string()]);
    }
    Ok(FigureTable {
        figure: FigureId::PsdEffect,
        header: header(&["axis", "value", "pearson", "stderr"]),
        rows,
        configs: configs.into_iter().map(|(_, _, c)| c).collect(),
    })
}

fn dimension_figure(opts: &FigureOptions) -> Result<FigureTable> {
    let ds: Vec<usize> = match opts.d {
        Some(d) => vec![d],
        None => vec![512, 2048, 8192],
    };
    let mut rows = Vec::new();
    let mut configs = Vec::new();
    for beta in [0.0, 1.0, 2.0] {
        for &d in &ds {
            let c = base(SignalFamilySpec::power_law(d, beta, 7), 2000, 100, opts);
            let s = run_experiment(&c)?;
            rows.push(vec![beta.to_string(), d.to_string(), s.pearson.mean.to_string(), s.pearson.stderr.to_string()]);
            configs.push(c);
        }
    }
    Ok(FigureTable { figure: FigureId::DimensionEffect, header: header(&["beta", "d", "pearson", "stderr"]), rows, configs })
}

fn ratio_figure(opts: &FigureOptions) -> Result<FigureTable> {
    let d = opts.d.unwrap_or(2048);
    let mut rows = Vec::new();
    let mut configs = Vec::new();
    for beta in [0.0, 0.5, 1.0] {
        let spec = SignalFamilySpec::power_law(d, beta, 7).with_zero_dc(true);
        let c = base(spec, 2000, 200, opts).with_frequencies((1..d / 2).collect());
        let s = run_experiment(&c)?;
        for f in &s.frequencies {
            let (Some(mse), Some(pred), Some(ratio)) = (f.phase_mse, f.thm2_phase_mse, f.thm2_mse_ratio) else {
                continue;
            };
            rows.push(vec![
                beta.to_string(),
                f.k.to_string(),
                mse.mean.to_string(),
                mse.stderr.to_string(),
                pred.to_string(),
                ratio.to_string(),
            ]);
        }
        configs.push(c);
    }
    Ok(FigureTable {
        figure: FigureId::HighDimensionRatio,
        header: header(&["beta", "k", "mse", "stderr", "thm2-prediction", "ratio"]),
        rows,
        configs,
    })
}
