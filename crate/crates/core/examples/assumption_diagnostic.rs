//! Spectral and autocorrelation diagnostics for the high-dimension assumptions.
//!
//! ```bash
//! cargo run --example assumption_diagnostic
//! ```

use efn_lab::signal::{check_assumption1, DEFAULT_TAIL_FRACTION};
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let specs = [
        ("delta", SignalFamilySpec::delta(1024)),
        ("flat zero-DC", SignalFamilySpec::flat_zero_dc(1024, 1)),
        ("power law beta=1", SignalFamilySpec::power_law(1024, 1.0, 1).with_zero_dc(true)),
        ("power law beta=2", SignalFamilySpec::power_law(1024, 2.0, 1).with_zero_dc(true)),
    ];
    println!("{:<18} {:>14} {:>14} {:>8}", "template", "tail R * ln d", "max|X| sqrt ln d", "|X[0]|");
    for (name, spec) in specs {
        let t = generate_template(&spec)?;
        let diag = check_assumption1(&t, DEFAULT_TAIL_FRACTION)?;
        println!(
            "{name:<18} {:>14.5} {:>16.5} {:>8.5}",
            diag.tail_autocorrelation, diag.max_magnitude, diag.dc_magnitude
        );
    }
    Ok(())
}
