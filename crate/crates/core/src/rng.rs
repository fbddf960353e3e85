//! Seeded randomness with a frozen, platform-independent definition.
//!
//! Stream `bpsp-shuffle-v1`:
//! 1. the 64-bit seed is expanded to a 32-byte key with SplitMix64 (four outputs, little endian);
//! 2. the key seeds ChaCha8 (`rand_chacha::ChaCha8Rng::from_seed`);
//! 3. bounded integers use Lemire's multiply-and-reject method on `next_u64`;
//! 4. permutations use the descending Fisher–Yates shuffle.
//!
//! Nothing here depends on `rand`'s distribution code, whose algorithms may
//! change between releases. Changing any step is a new stream version.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub const STREAM_VERSION: &str = "bpsp-shuffle-v1";

/// One step of SplitMix64. Advances `state` and returns the mixed output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th member of an ensemble with base seed `base`.
///
/// Counter-based, so each instance seed is computable on its own and the
/// ensemble does not depend on evaluation order.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    // Odd multiplier: injective in `index` for a fixed base.
    let mut state = base ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    splitmix64(&mut state);
    splitmix64(&mut state)
}

pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        SeededRng {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
