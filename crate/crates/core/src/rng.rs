//! Deterministic random streams.
//!
//! Every random quantity is drawn from a ChaCha stream whose seed is derived
//! from a master seed, a purpose tag and a counter, so trials are independent
//! of execution order and thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Purpose tags for derived streams.
pub mod tag {
    pub const ACTIVITY: u64 = 0xA1;
    pub const MESSAGES: u64 = 0xB2;
    pub const NOISE: u64 = 0xC3;
    pub const INTERLEAVER: u64 = 0xD4;
    pub const PHASES: u64 = 0xE5;
    pub const LDPC: u64 = 0xF6;
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a master seed with a tag and an index into a new 64-bit seed.
pub fn derive_seed(master: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ tag.rotate_left(17)) ^ index.rotate_left(41))
}

pub fn stream(master: u64, tag: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tag, index))
}
