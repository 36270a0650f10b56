//! Reproducible random rational sample points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

/// `count` tuples of `k` rationals `p/q` with `|p| <= 40` and `1 <= q <= 9`.
pub fn rational_points(seed: u64, count: usize, k: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..k)
                .map(|_| Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=9)))
                .collect()
        })
        .collect()
}
