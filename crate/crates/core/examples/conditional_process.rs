//! Build the correlation process conditioned on one noise coefficient, check
//! its covariance and draw from it.
//!
//! ```bash
//! cargo run --example conditional_process
//! ```

use efn_lab::rng::stream_rng;
use efn_lab::theory::{build_conditional_gaussian, CyclostationarySampler};
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let template = generate_template(&SignalFamilySpec::power_law(16, 1.0, 2))?;
    let cg = build_conditional_gaussian(&template, 3, 0.8, 0.4)?;
    println!("sigma^2 = {:.6}", cg.sigma2());
    let row = cg.covariance_row();
    println!("covariance row: {:?}", row.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>());

    let sampler = CyclostationarySampler::new(&cg)?;
    let mut rng = stream_rng(1, 0, 0, 0);
    let (n, mut lag1, mut mean0) = (100_000, 0.0, 0.0);
    let mut s = Vec::new();
    for _ in 0..n {
        sampler.sample(&mut rng, &mut s);
        mean0 += s[0];
        lag1 += (s[0] - cg.mean()[0]) * (s[1] - cg.mean()[1]);
    }
    println!("sample mean[0] = {:.4}, target {:.4}", mean0 / n as f64, cg.mean()[0]);
    println!("sample cov lag 1 = {:.4}, target {:.4}", lag1 / n as f64, row[1]);
    Ok(())
}
