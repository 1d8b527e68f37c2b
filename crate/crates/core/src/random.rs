//! Seeded generators for series, units, elements and scalars.
//!
//! Every sample draws from its own ChaCha stream selected by
//! `(seed, sample index)`, so a run is reproducible sample by sample and
//! does not depend on evaluation order.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::f2series::F2Series;
use crate::puiseux::{compose, L0Element, PuiseuxUnit, Rational};

/// Grid denominators random units are drawn on.
pub const GRID_CHOICES: [u64; 7] = [1, 2, 3, 4, 6, 8, 12];

/// Largest |numerator| of a random valuation.
pub const VALUATION_BOUND: i64 = 24;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform series with constant term 1.
pub fn random_series_unit<R: Rng + ?Sized>(rng: &mut R, prec: usize) -> F2Series {
    let words: Vec<u64> = (0..prec.div_ceil(64)).map(|_| rng.gen()).collect();
    let mut s = F2Series::from_words(words, prec).expect("positive precision");
    if !s.is_unit() {
        s.flip_bit(0);
    }
    s
}

/// A unit known modulo `x^aprec`, with a fair coin in every slot of a grid
/// drawn from [`GRID_CHOICES`] (refined if `aprec` needs a finer one).
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, aprec: &Rational) -> PuiseuxUnit {
    let choice = GRID_CHOICES[rng.gen_range(0..GRID_CHOICES.len())];
    let aprec_den = u64::try_from(aprec.denom()).expect("precision denominator fits in u64");
    let den = num_integer::lcm(choice, aprec_den);
    let prec = (aprec * Rational::from_integer(BigInt::from(den))).to_integer();
    let prec = usize::try_from(prec).expect("precision is positive and fits in usize");
    PuiseuxUnit::normalize(den, random_series_unit(rng, prec)).expect("constant term is 1")
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, aprec: &Rational) -> L0Element {
    let den = GRID_CHOICES[rng.gen_range(0..GRID_CHOICES.len())];
    let num = rng.gen_range(-VALUATION_BOUND..=VALUATION_BOUND);
    let val = Rational::new(BigInt::from(num), BigInt::from(den));
    compose(val, random_unit(rng, aprec))
}

/// `p/q` with `p, q` in `[-bound, bound]` and `q != 0`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let mut den = 0;
    while den == 0 {
        den = rng.gen_range(-bound..=bound);
    }
    Rational::new(BigInt::from(num), BigInt::from(den))
}
