//! Counter-based derivation of per-sequence random streams.
//!
//! Every random sequence is driven by its own ChaCha8 stream keyed by the
//! experiment seed, with the stream number built from the sequence length
//! and the sequence index. Results therefore do not depend on scheduling or
//! on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from_seed(seed: u64) -> [u8; 32] {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// Stream for sequence `index` at length `m` under `seed`.
pub fn sequence_rng(seed: u64, m: usize, index: usize) -> SimRng {
    assert!((m as u64) < 1 << 32 && (index as u64) < 1 << 32);
    let mut rng = ChaCha8Rng::from_seed(key_from_seed(seed));
    rng.set_stream(((m as u64) << 32) | index as u64);
    rng
}

/// General-purpose stream for auxiliary draws (not tied to a sequence).
pub fn aux_rng(seed: u64, label: u64) -> SimRng {
    let mut rng = ChaCha8Rng::from_seed(key_from_seed(seed ^ 0xA5A5_5A5A_0F0F_F0F0));
    rng.set_stream(label);
    rng
}
