//! Counter-based RNG streams.
//!
//! Every stream is keyed by the full tuple `(master, a, b, domain)` packed into
//! the 256-bit ChaCha key, so distinct tuples never share a stream and results
//! do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DOMAIN_OBSERVATION: u64 = 1;
pub const DOMAIN_PHASE_MOMENTS: u64 = 2;
pub const DOMAIN_LEMMA1: u64 = 3;
pub const DOMAIN_GUMBEL: u64 = 4;
pub const DOMAIN_SOFTMAX: u64 = 5;
pub const DOMAIN_CYCLOSTATIONARY: u64 = 6;
pub const DOMAIN_VERIFY: u64 = 7;

pub fn stream_rng(master: u64, a: u64, b: u64, domain: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master.to_le_bytes());
    key[8..16].copy_from_slice(&a.to_le_bytes());
    key[16..24].copy_from_slice(&b.to_le_bytes());
    key[24..].copy_from_slice(&domain.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Stream for observation `obs` of Monte-Carlo trial `trial`.
pub fn observation_rng(master: u64, trial: u64, obs: u64) -> ChaCha8Rng {
    stream_rng(master, trial, obs, DOMAIN_OBSERVATION)
}
