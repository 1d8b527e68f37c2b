//! Deterministic inputs shared by the benchmarks.

use divfield_core::random::{random_series_unit, random_unit, sample_rng};
use divfield_core::{ratio, F2Series, PuiseuxUnit};

/// Two random series units at precision `prec`, the same on every run.
pub fn series_pair(prec: usize) -> (F2Series, F2Series) {
    let mut rng = sample_rng(0xbe7c, prec as u64);
    (random_series_unit(&mut rng, prec), random_series_unit(&mut rng, prec))
}

/// Random word vectors of length `n`, for the raw product kernels.
pub fn word_pair(n: usize) -> (Vec<u64>, Vec<u64>) {
    let (a, b) = series_pair(64 * n);
    (a.words().to_vec(), b.words().to_vec())
}

pub fn unit_pair(aprec: i64) -> (PuiseuxUnit, PuiseuxUnit) {
    let mut rng = sample_rng(0x5e11, aprec as u64);
    (random_unit(&mut rng, &ratio(aprec, 1)), random_unit(&mut rng, &ratio(aprec, 1)))
}
