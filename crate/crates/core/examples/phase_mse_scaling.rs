//! Sweep M and fit the log-log slope of the per-frequency phase MSE.
//!
//! ```bash
//! cargo run --example phase_mse_scaling
//! ```

use efn_lab::experiment::{fit_loglog_slope, sweep_axis, ExperimentConfig, SweepAxis};
use efn_lab::SignalFamilySpec;

fn main() -> efn_lab::Result<()> {
    let ks = vec![1, 4, 16];
    let config = ExperimentConfig::new(SignalFamilySpec::power_law(256, 1.0, 7), 100, 60, 5)
        .with_frequencies(ks.clone())
        .with_prediction_trials(0);
    let points = sweep_axis(&config, SweepAxis::M, &[100.0, 300.0, 1000.0])?;

    for (i, k) in ks.iter().enumerate() {
        let series: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p.value, p.stats.frequencies[i].phase_mse.expect("k has a phase").mean))
            .collect();
        let fit = fit_loglog_slope(&series)?;
        println!("k = {k:>2}  slope = {:+.3}  r2 = {:.3}", fit.slope, fit.r2);
    }
    Ok(())
}
