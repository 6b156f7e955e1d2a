//! CSV and JSON serialization of aggregate statistics.

use std::io::Write;

use super::runner::AggregateStats;
use crate::error::Result;
use crate::stats::MeanEstimate;

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Long format, header `k,statistic,value,stderr`; `k` is empty for global statistics.
pub fn write_stats_csv<W: Write>(stats: &AggregateStats, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["k", "statistic", "value", "stderr"])?;
    let mut est = |k: String, name: &str, e: &MeanEstimate| -> Result<()> {
        w.write_record([k, name.to_string(), e.mean.to_string(), e.stderr.to_string()])?;
        Ok(())
    };
    est(String::new(), "pearson", &stats.pearson)?;
    for f in &stats.frequencies {
        let k = f.k.to_string();
        if let Some(e) = &f.phase_mse {
            est(k.clone(), "phase-mse", e)?;
        }
        est(k.clone(), "magnitude", &f.magnitude)?;
        if let Some(e) = &f.thm1_magnitude {
            est(k.clone(), "thm1-magnitude", e)?;
        }
    }
    for f in &stats.frequencies {
        let k = f.k.to_string();
        let plain = [
            ("template-magnitude", Some(f.template_magnitude)),
            ("thm2-phase-mse", f.thm2_phase_mse),
            ("thm2-mse-ratio", f.thm2_mse_ratio),
            ("thm2-magnitude", Some(f.thm2_magnitude)),
            ("thm2-magnitude-ratio", Some(f.thm2_magnitude_ratio)),
            ("thm1-phase-mse", f.thm1_phase_mse),
            ("thm1-mse-ratio", f.thm1_mse_ratio),
            ("thm1-magnitude-ratio", f.thm1_magnitude_ratio),
        ];
        for (name, v) in plain {
            if v.is_some() {
                w.write_record([k.clone(), name.to_string(), opt(v), String::new()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json<W: Write>(stats: &AggregateStats, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, stats)?;
    Ok(())
}
