#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sturmian::{DirectiveSequence, WordFamily};

pub fn family(text: &str) -> WordFamily {
    WordFamily::new(text.parse().expect("directive"))
}

/// Twenty seeded directive sequences with every term in `1..=4`.
pub fn random_directives(seed: u64) -> Vec<DirectiveSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20)
        .map(|_| {
            let head: Vec<u64> = (0..16).map(|_| rng.gen_range(1..=4)).collect();
            let tail: Vec<u64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=4)).collect();
            DirectiveSequence::new(head, Some(tail)).expect("positive terms")
        })
        .collect()
}

/// `(1)`, `(2,1)`, `(3)` repeating and the twenty seeded sequences.
pub fn standard_families() -> Vec<WordFamily> {
    ["(1)", "(2,1)", "(3)"]
        .iter()
        .map(|t| family(t))
        .chain(random_directives(2024).into_iter().map(WordFamily::new))
        .collect()
}
