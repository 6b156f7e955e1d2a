//! The softmax surrogate for the mean of a function at the argmax, compared
//! with Monte Carlo, plus the derivative identity of its log-sum-exp potential.
//!
//! ```bash
//! cargo run --example softmax_argmax
//! ```

use efn_lab::theory::{compare_softmax, m_star, softmax_expectation};
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    for d in [256, 1024] {
        let template = generate_template(&SignalFamilySpec::delta(d))?;
        let cmp = compare_softmax(&template, d / 8, 1.0, 0.5, 20_000, 4)?;
        println!(
            "d = {d:>4}  softmax = {:.5}  monte carlo = {:.5} ± {:.5}  relative gap = {:.4}",
            cmp.softmax, cmp.monte_carlo.mean, cmp.monte_carlo.stderr, cmp.relative_gap
        );
    }

    let mean: Vec<f64> = (0..64).map(|i| (i as f64 * 0.3).sin()).collect();
    let f: Vec<f64> = (0..64).map(|i| (i as f64 * 0.7).cos()).collect();
    let h = 1e-5;
    let slope = (m_star(&mean, &f, h)? - m_star(&mean, &f, -h)?) / (2.0 * h);
    println!("d/dalpha m*(0) = {slope:.8}, softmax = {:.8}", softmax_expectation(&f, &mean)?);
    Ok(())
}
