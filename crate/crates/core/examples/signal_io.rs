//! Generate templates from each family, round-trip them through CSV and JSON,
//! and inspect their spectra.
//!
//! ```bash
//! cargo run --example signal_io
//! ```

use efn_lab::signal::io::{read_signal_csv, read_signal_json, write_signal_csv, write_signal_json};
use efn_lab::signal::{dft, idft};
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let t = generate_template(&SignalFamilySpec::zero_padded_pulse(32, 1.0, 1.0, 5))?;

    let mut csv = Vec::new();
    write_signal_csv(&mut csv, t.samples())?;
    let back = read_signal_csv(csv.as_slice())?;
    println!("csv round trip exact: {}", back == t.samples());

    let mut json = Vec::new();
    write_signal_json(&mut json, t.samples())?;
    let record = read_signal_json(json.as_slice())?;
    println!("json record d = {}, |X[1]| = {:.6}", record.d, record.magnitudes[1]);

    let spec = dft(t.samples())?;
    let err = idft(&spec)?.iter().zip(t.samples()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("energy {:.12}, idft error {err:.2e}", spec.energy());
    Ok(())
}
