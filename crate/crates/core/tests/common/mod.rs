#![allow(dead_code)]

use chen_lorenz::exact::Rational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `n/d` with `n` in `[lo*d, hi*d]` and `d` in `1..=max_den`.
pub fn rational_in(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(lo * d..=hi * d), d)
}

/// Strictly positive rational at most `hi`.
pub fn positive(rng: &mut impl Rng, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(1..=hi * d), d)
}
