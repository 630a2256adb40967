//! Seeded random streams.
//!
//! Every stochastic routine takes a `u64` seed and builds a ChaCha20 stream
//! from it; sub-streams (replicas, grid points) get seeds mixed with SplitMix64
//! so that neighbouring indices yield unrelated streams.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Identifier recorded in run metadata.
pub const RNG_ALGORITHM: &str = "chacha20 (rand_chacha, seed_from_u64); sub-seeds via splitmix64";

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the sub-stream addressed by `path` under `seed`.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(seed), |acc, &k| {
        splitmix64(acc ^ splitmix64(k.wrapping_add(0x632B_E59B_D9B4_E019)))
    })
}
