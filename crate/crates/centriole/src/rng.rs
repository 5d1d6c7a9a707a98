//! Deterministic, counter-based random streams.
//!
//! Every sampled quantity in the engine draws from a ChaCha stream keyed by
//! `(seed, label, index)`, so checks can run concurrently and in any order
//! while producing identical reports for a fixed configuration.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// A generator for the stream `(seed, label, index)`.
pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(label.as_bytes()).to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    let mix = fnv1a(&key[0..24]);
    key[24..32].copy_from_slice(&mix.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
