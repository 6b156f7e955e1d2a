//! Paired comparison of argmax laws under opposite cosine means.
//!
//! ```bash
//! cargo run --example sign_pattern
//! ```

use efn_lab::theory::lemma1_check;
use efn_lab::{generate_template, SignalFamilySpec};

fn main() -> efn_lab::Result<()> {
    let template = generate_template(&SignalFamilySpec::delta(8))?;
    let report = lemma1_check(&template, 1, 0.0, 200_000, 6)?;
    let confirmed = report.confirmed_lags();
    println!("lag    mu      P+      P-     diff/se  confirmed");
    for l in 0..report.d {
        let diff = report.difference[l];
        println!(
            "{l:>3} {:+.3} {:.4} {:.4} {:+8.2}  {}",
            report.mean[l],
            report.p_plus[l],
            report.p_minus[l],
            diff.mean / diff.stderr,
            confirmed[l]
        );
    }
    println!("concentration sum {:.5} ± {:.5}", report.concentration.mean, report.concentration.stderr);
    Ok(())
}
