//! Average pure-noise observations after aligning each to a template and watch
//! the result correlate with the template as M grows.
//!
//! ```bash
//! cargo run --example efn_from_noise
//! ```

use efn_lab::estimator::pearson_correlation;
use efn_lab::rng::observation_rng;
use efn_lab::signal::fill_gaussian;
use efn_lab::{generate_template, Aligner, EfnAccumulator, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let d = 512;
    let template = generate_template(&SignalFamilySpec::power_law(d, 1.0, 3))?;
    let aligner = Aligner::new(&template)?;
    let mut acc = EfnAccumulator::new(&template, 1.0)?;
    let mut noise = vec![0.0; d];

    let checkpoints = [10u64, 100, 1000, 5000];
    let mut next = 0;
    for obs in 0..*checkpoints.last().unwrap() {
        fill_gaussian(&mut observation_rng(42, 0, obs), 1.0, &mut noise);
        acc.accumulate(&aligner, &noise)?;
        if acc.count() == checkpoints[next] {
            let est = acc.finalize()?;
            let rho = pearson_correlation(est.samples(), template.samples())?;
            println!("M = {:>5}  pearson = {rho:.4}", acc.count());
            next += 1;
        }
    }
    Ok(())
}
