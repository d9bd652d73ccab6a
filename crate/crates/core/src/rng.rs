//! Seeded, stream-addressable randomness.
//!
//! A `RandomSource` is identified by a `(seed, stream)` pair. Monte-Carlo
//! drivers give every trial its own stream index, so results never depend on
//! how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bit::Bit;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform draw from `[low, high)`.
    pub fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }

    pub fn bit(&mut self) -> Bit {
        Bit::from_bool(self.rng.random::<bool>())
    }

    /// Returns `Bit::ONE` with probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> Bit {
        Bit::from_bool(self.uniform() < p)
    }
}
