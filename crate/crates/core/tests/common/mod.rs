#![allow(dead_code)]

use std::sync::Arc;

use meqsim::fingerprint::sample_code;
use meqsim::{BitString, Gate, LinearCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n = 2`, `m = 4`: every pair of distinct fingerprints is orthogonal.
pub fn code_n2() -> Arc<LinearCode> {
    Arc::new(LinearCode::from_rows(vec![bs("1100"), bs("0110")]).unwrap())
}

/// `n = 3`, `m = 4`: overlaps of distinct fingerprints are ±1/2 or 0.
pub fn code_n3() -> Arc<LinearCode> {
    Arc::new(LinearCode::from_rows(vec![bs("1000"), bs("0100"), bs("0010")]).unwrap())
}

/// Smallest-register code used for each input length up to 4.
pub fn small_code(n: usize) -> Arc<LinearCode> {
    match n {
        1 => Arc::new(LinearCode::from_rows(vec![bs("10")]).unwrap()),
        2 => code_n2(),
        3 => code_n3(),
        _ => Arc::new(sample_code(n, 8, &mut rng(n as u64), 10_000).unwrap()),
    }
}

pub fn random_bits<R: rand::Rng>(n: usize, rng: &mut R) -> BitString {
    BitString::from_u128(n, rng.random::<u128>() & ((1u128 << n) - 1))
}

/// Sorted, deduplicated qubits touched by a circuit.
pub fn touched(circuit: &[Gate]) -> Vec<usize> {
    let mut q: Vec<usize> = circuit.iter().flat_map(Gate::qubits).collect();
    q.sort_unstable();
    q.dedup();
    q
}

pub fn binomial(n: usize, c: usize) -> usize {
    if c > n {
        return 0;
    }
    (0..c).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
