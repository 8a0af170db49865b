//! Shared inputs for the benchmarks.

use mixent::states::{random_state, DensityMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n` Hilbert-Schmidt random states from a fixed seed.
pub fn sample_states(n: usize, seed: u64) -> Vec<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_state(&mut rng, None)).collect()
}
