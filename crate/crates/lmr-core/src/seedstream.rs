//! Deterministic seed derivation.
//!
//! All randomness in the crate flows through ChaCha12 streams whose seeds
//! are derived with [`hash64`], a splitmix64 chain over a domain tag and
//! the caller's parameters. Identical inputs give bit-identical streams on
//! every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// splitmix64 step.
#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-sensitive 64-bit hash of a word sequence.
pub fn hash64(parts: &[u64]) -> u64 {
    let mut state = 0x51_7c_c1_b7_27_22_0a_95u64;
    let mut acc = 0u64;
    for &p in parts {
        state ^= p;
        acc = acc.rotate_left(7) ^ splitmix64(&mut state);
    }
    // One extra scramble so short sequences diffuse fully.
    state ^= acc;
    splitmix64(&mut state)
}

/// Hash that mixes a string domain tag with numeric parameters.
pub fn hash64_tagged(tag: &str, parts: &[u64]) -> u64 {
    let mut words: Vec<u64> = Vec::with_capacity(parts.len() + tag.len() / 8 + 2);
    words.push(tag.len() as u64);
    for chunk in tag.as_bytes().chunks(8) {
        let mut w = [0u8; 8];
        w[..chunk.len()].copy_from_slice(chunk);
        words.push(u64::from_le_bytes(w));
    }
    words.extend_from_slice(parts);
    hash64(&words)
}

/// Stable encoding of an `f64` for seed derivation.
#[inline]
pub fn f64_word(x: f64) -> u64 {
    x.to_bits()
}

/// ChaCha12 stream for a named domain and parameter list.
pub fn stream(tag: &str, parts: &[u64]) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(hash64_tagged(tag, parts))
}
