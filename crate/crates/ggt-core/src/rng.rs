//! Reproducible randomness.
//!
//! Every seeded operation draws from a ChaCha8 stream whose 256-bit key
//! is derived from the user seed and a stream label with SplitMix64.
//! ChaCha8 produces identical output on every platform, and distinct
//! labels give independent streams from one seed, so scenarios can run
//! concurrently while staying byte-reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the PRNG stream for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut state = seed;
    for chunk in label.as_bytes().chunks(8) {
        let mut block = [0u8; 8];
        block[..chunk.len()].copy_from_slice(chunk);
        state ^= u64::from_le_bytes(block);
        splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for slot in key.chunks_exact_mut(8) {
        slot.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
