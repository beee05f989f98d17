//! Shared helpers for the kernel benchmarks.

use pgmlab::rng::rng_from;
use rand::Rng as _;

/// Deterministic pseudo-random table of the given length.
pub fn random_table(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from(seed);
    (0..len).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect()
}
