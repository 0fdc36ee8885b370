//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use meqsim::fingerprint::sample_default_code;
use meqsim::{BitString, LinearCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A default-length code for `n`-bit inputs.
pub fn code(n: usize, seed: u64) -> Arc<LinearCode> {
    Arc::new(sample_default_code(n, &mut rng(seed), 10_000).expect("code search succeeds"))
}

pub fn random_inputs(k: usize, n: usize, seed: u64) -> Vec<BitString> {
    let mut r = rng(seed);
    (0..k).map(|_| BitString::from_u128(n, r.random::<u128>() & ((1 << n) - 1))).collect()
}
