//! Recover a planted cyclic shift and compare the real-space and Fourier-space
//! correlation sequences.
//!
//! ```bash
//! cargo run --example alignment_basics
//! ```

use efn_lab::alignment::{argmax_first, correlation_sequence, estimate_shift, fourier_correlation_sequence};
use efn_lab::signal::circular_shift;
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let template = generate_template(&SignalFamilySpec::power_law(64, 1.0, 11))?;

    let planted = circular_shift(template.samples(), 5);
    let found = estimate_shift(&planted, &template)?;
    println!("planted shift 5, recovered {} (peak {:.6})", found.shift, found.peak);

    let noise: Vec<f64> = (0..64).map(|i| ((i * 37 % 64) as f64 / 32.0) - 1.0).collect();
    let direct = correlation_sequence(&noise, &template)?;
    let fourier = fourier_correlation_sequence(&noise, &template)?;
    println!(
        "argmax real space {}, Fourier space {}",
        argmax_first(&direct).0,
        argmax_first(&fourier).0
    );
    println!("ratio of the two sequences at lag 0: {:.6}", fourier[0] / direct[0]);
    Ok(())
}
