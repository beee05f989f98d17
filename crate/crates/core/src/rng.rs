//! Seed derivation for reproducible experiments.
//!
//! Every stochastic operation takes an explicit 64-bit seed and derives
//! independent child seeds per task with a splitmix64 mix, so results are
//! independent of evaluation order and thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derive an independent child seed from a base seed, a domain tag, and an index.
pub fn child_seed(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ tag.wrapping_mul(0xd1342543de82ef95)) ^ index)
}

/// A deterministic generator for the given seed.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
