//! Seeded sample-point generation for the verification drivers.
//!
//! The generator is an explicit 64-bit linear congruential generator so that
//! any implementation, in any language, reproduces the same sample set from
//! the same seed:
//!
//! ```text
//! state[i+1] = (6364136223846793005 * state[i] + 1442695040888963407) mod 2^64
//! output[i]  = (state[i+1] >> 11) / 2^53        (a double in [0, 1))
//! ```
//!
//! `state[0]` is the seed itself.

/// Deterministic 64-bit linear congruential generator.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(MULTIPLIER)
            .wrapping_add(INCREMENT);
        self.state
    }

    /// Next double in [0, 1), using the top 53 bits of the state.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Next double uniform on [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
