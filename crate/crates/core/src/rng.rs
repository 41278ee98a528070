//! SplitMix64 pseudo-random generator.
//!
//! The random set family promises bitwise reproducibility from a seed, so
//! the generator is pinned to a fully specified algorithm rather than an
//! external crate whose stream might change. SplitMix64 is Steele, Lea &
//! Flood's 64-bit finalizer-based generator: the state advances by the
//! golden-ratio increment `0x9E3779B97F4A7C15` and each output is the
//! mixed state
//!
//! ```text
//! z  = state
//! z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//! z ^= z >> 27; z *= 0x94D049BB133111EB
//! z ^= z >> 31
//! ```
//!
//! (all arithmetic mod 2^64). Any implementation of these constants
//! reproduces the same stream for the same seed.

/// SplitMix64 state. Copy of the published reference algorithm.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits of the next output.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
