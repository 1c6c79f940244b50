//! Deterministic random streams.
//!
//! Every measurement draws from its own ChaCha stream keyed by
//! `(seed, point, iteration, dimension)`, so the order in which points are
//! processed, or the thread that processes them, never changes a result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn mix(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6a09_e667_f3bc_c908, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Stream for one measurement of one coordinate of one point.
pub fn measurement_stream(seed: u64, point: usize, iteration: usize, dimension: usize) -> StreamRng {
    let key = mix(&[seed, point as u64, iteration as u64, dimension as u64]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(key);
    rng
}

/// Stream for an auxiliary purpose (imputation, blob sampling) identified by
/// a fixed tag.
pub fn tagged_stream(seed: u64, tag: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(mix(&[tag]));
    rng
}
