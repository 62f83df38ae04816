//! Seeded randomness. Every random quantity in the crate is drawn from a
//! ChaCha stream selected by `(seed, stream)`, so independent consumers of the
//! same master seed never share a sequence.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::norm::Field;

pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_scalars(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Vec<Complex64> {
    (0..n)
        .map(|_| match field {
            Field::Real => Complex64::new(gaussian(rng), 0.0),
            Field::Complex => Complex64::new(gaussian(rng), gaussian(rng)),
        })
        .collect()
}
