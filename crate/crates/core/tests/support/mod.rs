#![allow(dead_code)]

pub mod oracle;

use mcgdensity_core::mapping_class::{Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded words of length `1..=max_len` over the first `curves` twists with
/// exponents in `-max_power..=max_power`, zero excluded.
pub fn random_words(seed: u64, count: usize, curves: usize, max_len: usize, max_power: i64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word(
                (0..len)
                    .map(|_| {
                        let p = rng.gen_range(1..=max_power);
                        Letter { curve: rng.gen_range(0..curves), power: if rng.gen() { p } else { -p } }
                    })
                    .collect(),
            )
        })
        .collect()
}
