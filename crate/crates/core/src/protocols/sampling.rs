use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bernoulli sampling keyed by `(seed, round, index)`.
///
/// The draw for one key does not depend on which other keys were drawn, so
/// rounds can be replayed or reordered without changing the sample.
#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { seed }
    }

    /// Uniform value in `[0, 1)` for the key.
    pub fn uniform(&self, round: u64, index: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(round);
        rng.set_word_pos(u128::from(index) * 2);
        (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn keep(&self, round: u64, index: u64, p: f64) -> bool {
        p >= 1.0 || self.uniform(round, index) < p
    }

    /// Indices in `0..n` kept with probability `p`.
    pub fn sample(&self, round: u64, n: usize, p: f64) -> Vec<usize> {
        (0..n).filter(|&i| self.keep(round, i as u64, p)).collect()
    }
}
