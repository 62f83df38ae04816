//! Random instances for the verification suite.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::function_space::{ScalarFunction, VValuedFunction};
use crate::kernel::Kernel;
use crate::norm::{Field, NormSpec, Scalar, Vector};
use crate::polytope;
use crate::rng::{gaussian, gaussian_scalars};

/// Random spanning polytope norm in `dim` dimensions with between `dim + 1`
/// and `min(2 dim, 12)` generators (at least `dim + 1`).
pub fn polytope(rng: &mut ChaCha8Rng, dim: usize) -> NormSpec {
    let max = (2 * dim).min(12).max(dim + 1);
    let m = rng.gen_range(dim + 1..=max);
    loop {
        let generators: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..dim).map(|_| gaussian(rng)).collect())
            .collect();
        if polytope::rank(&generators) == dim {
            return NormSpec::polytope(generators).expect("spanning generators");
        }
    }
}

pub fn weights(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| 10f64.powf(rng.gen_range(-1.0..1.0))).collect()
}

/// One spec of every family for dimension `dim`: real `Lp` for `p` in
/// `{1, p_list…, ∞}`, a complex `Lp`, real and complex weighted `Lp`, and a
/// polytope. `pick` rotates the exponent used by the single-exponent specs.
pub fn family_specs(rng: &mut ChaCha8Rng, dim: usize, p_list: &[f64], pick: usize) -> Result<Vec<NormSpec>> {
    let mut exponents = vec![1.0];
    exponents.extend_from_slice(p_list);
    exponents.push(f64::INFINITY);
    let rotating = exponents[pick % exponents.len()];
    let mut specs = exponents
        .iter()
        .map(|&p| NormSpec::lp(p, dim, Field::Real))
        .collect::<Result<Vec<_>>>()?;
    specs.push(NormSpec::lp(rotating, dim, Field::Complex)?);
    specs.push(NormSpec::weighted_lp(rotating, weights(rng, dim), Field::Real)?);
    let other = exponents[(pick + 1) % exponents.len()];
    specs.push(NormSpec::weighted_lp(other, weights(rng, dim), Field::Complex)?);
    specs.push(polytope(rng, dim));
    Ok(specs)
}

/// Gaussian vector scaled by a random factor in `[0.01, 100]`.
pub fn vector(rng: &mut ChaCha8Rng, spec: &NormSpec) -> Vector {
    let scale = 10f64.powf(rng.gen_range(-2.0..2.0));
    spec.random_vector(rng).scale(Scalar::new(scale, 0.0))
}

pub fn scalar_function(rng: &mut ChaCha8Rng, n: usize, field: Field) -> ScalarFunction {
    let mut values = gaussian_scalars(rng, n, field);
    // sprinkle exact zeros so sparse supports get exercised
    for v in values.iter_mut() {
        if rng.gen_bool(0.15) {
            *v = Scalar::new(0.0, 0.0);
        }
    }
    ScalarFunction::new(values).expect("n >= 1")
}

pub fn vvalued_function(rng: &mut ChaCha8Rng, n: usize, spec: &NormSpec) -> VValuedFunction {
    VValuedFunction::new((0..n).map(|_| vector(rng, spec)).collect()).expect("n >= 1")
}

/// Random kernel on `n` points: Gaussian entries, some zeroed, occasionally
/// entrywise nonnegative.
pub fn kernel(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Kernel {
    let nonnegative = rng.gen_bool(0.25);
    let rows = (0..n)
        .map(|_| {
            gaussian_scalars(rng, n, field)
                .into_iter()
                .map(|z| {
                    if rng.gen_bool(0.2) {
                        Scalar::new(0.0, 0.0)
                    } else if nonnegative {
                        Scalar::new(z.norm(), 0.0)
                    } else {
                        z
                    }
                })
                .collect()
        })
        .collect();
    Kernel::from_rows(rows).expect("finite square kernel")
}
