//! Deterministic seed fan-out.
//!
//! A single master seed is split into independent ChaCha streams keyed by
//! (seed, stream tag, index). Workers draw from disjoint streams, so results
//! are byte-identical regardless of thread count or evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags for the counter scheme. Each (tag, index) pair owns an
/// independent random stream derived from the master seed.
pub mod stream {
    pub const CALIBRATION: u64 = 1;
    pub const MOMENTS: u64 = 2;
    pub const SAMPLE_SET: u64 = 3;
    pub const GRAM_SAMPLE: u64 = 4;
    pub const CONVERGENCE: u64 = 5;
}

const DOMAIN: u64 = 0x636f_6e73_656e_7375; // "consensu"

/// Derive the RNG for (master seed, stream tag, index).
pub fn substream(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    key[24..32].copy_from_slice(&DOMAIN.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
