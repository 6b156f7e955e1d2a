//! Normalized maxima of Gaussian vectors against the standard Gumbel law.
//!
//! ```bash
//! cargo run --example gumbel_maxima
//! ```

use efn_lab::experiment::{ks_statistic, ReferenceCdf};
use efn_lab::theory::{normalized_gaussian_maxima, GumbelConstants};

fn main() -> efn_lab::Result<()> {
    for d in [256, 1024, 4096] {
        let c = GumbelConstants::new(d)?;
        let maxima = normalized_gaussian_maxima(d, 10_000, 3)?;
        let ks = ks_statistic(&maxima, ReferenceCdf::GumbelStandard)?;
        println!("d = {d:>4}  a_d = {:.5}  b_d = {:.5}  KS = {ks:.4}", c.a, c.b);
    }
    Ok(())
}
