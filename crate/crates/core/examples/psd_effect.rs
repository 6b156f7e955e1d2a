//! Flatter spectra give estimates that correlate better with the template.
//!
//! ```bash
//! cargo run --example psd_effect
//! ```

use efn_lab::experiment::{run_experiment, ExperimentConfig};
use efn_lab::SignalFamilySpec;

fn main() -> efn_lab::Result<()> {
    for beta in [2.0, 1.0, 0.0] {
        let c = ExperimentConfig::new(SignalFamilySpec::power_law(512, beta, 7), 500, 40, 1).with_prediction_trials(0);
        let s = run_experiment(&c)?;
        println!("beta = {beta}  pearson = {:.4} ± {:.4}", s.pearson.mean, s.pearson.stderr);
    }
    for pad in [0.0, 1.0, 3.0] {
        let spec = SignalFamilySpec::zero_padded_pulse(512, pad, 2.0, 7);
        let c = ExperimentConfig::new(spec, 500, 40, 1).with_prediction_trials(0);
        let s = run_experiment(&c)?;
        println!("pad ratio = {pad}  pearson = {:.4} ± {:.4}", s.pearson.mean, s.pearson.stderr);
    }
    Ok(())
}
