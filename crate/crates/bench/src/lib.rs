//! Shared fixtures for the criterion benchmarks.

use bpsp_core::{generate_instance, CarSequence};

/// Fixed-seed instance so benchmark inputs never drift between runs.
pub fn fixture(n: usize) -> CarSequence {
    generate_instance(n, 0x5eed_0000 + n as u64).expect("n is positive")
}
