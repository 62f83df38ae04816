//! Finite samples of the dual unit sphere `Σ = { λ : ‖λ‖_{V*} = 1 }` and the
//! embedding `v ↦ φ_v`, `φ_v(λ) = λ(v)`, into sup-normed functions on `Σ`.
//!
//! `Σ` is never represented in closed form. Random points are Gaussian
//! coefficient vectors scaled to dual norm one; anchoring the norming
//! functional of `v` in the sample makes `sup |φ_v|` attain `‖v‖` exactly.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::norm::{self, Functional, NormSpec, Scalar, Vector};
use crate::rng;
use crate::tol;

#[derive(Clone, Debug)]
pub struct SphereSample {
    spec: NormSpec,
    seed: u64,
    points: Vec<Functional>,
}

impl SphereSample {
    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[Functional] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// JSON-friendly form: each point as `[re, im]` pairs.
    pub fn to_record(&self) -> SampleRecord {
        SampleRecord {
            norm: self.spec.label(),
            seed: self.seed,
            points: self
                .points
                .iter()
                .map(|p| p.coords().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub norm: String,
    pub seed: u64,
    pub points: Vec<Vec<[f64; 2]>>,
}

/// `n` random points of `Σ` followed by the norming functional of every
/// anchor. Deterministic in `seed`.
pub fn sphere_sample(
    spec: &NormSpec,
    n: usize,
    seed: u64,
    anchors: &[Vector],
) -> Result<SphereSample> {
    if n < 1 {
        return Err(Error::InvalidInput("sphere sample needs n >= 1".into()));
    }
    let mut rng = rng::seeded(seed, 1);
    let mut points = Vec::with_capacity(n + anchors.len());
    while points.len() < n {
        let lam = spec.random_functional(&mut rng);
        let d = norm::dual_norm_eval(spec, &lam)?;
        if d > 0.0 {
            points.push(lam.scale(Scalar::new(1.0 / d, 0.0)));
        }
    }
    for v in anchors {
        points.push(norm::norming_functional(spec, v)?);
    }
    Ok(SphereSample {
        spec: spec.clone(),
        seed,
        points,
    })
}

/// Values of a function on the points of a [`SphereSample`], in sample order.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFunction {
    values: Vec<Scalar>,
}

impl SphereFunction {
    pub fn new(values: Vec<Scalar>) -> Self {
        SphereFunction { values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn add(&self, other: &SphereFunction) -> Result<SphereFunction> {
        check_dim(self.values.len(), other.values.len())?;
        Ok(SphereFunction::new(
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, alpha: Scalar) -> SphereFunction {
        SphereFunction::new(self.values.iter().map(|z| z * alpha).collect())
    }
}

/// `φ_v` restricted to the sample.
pub fn embed(v: &Vector, sample: &SphereSample) -> Result<SphereFunction> {
    sample.spec.check_vector(v)?;
    let values = sample
        .points
        .iter()
        .map(|lam| lam.apply(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SphereFunction::new(values))
}

/// Maximum modulus over the sampled points.
pub fn sup_norm(phi: &SphereFunction) -> Result<f64> {
    if phi.values.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(phi.values.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsometryCheck {
    /// `sup |φ_v|` over the anchored sample.
    pub lower: f64,
    pub norm: f64,
    pub pass: bool,
}

/// Compares `sup |φ_v|` on an `n`-point sample anchored at `v` with `‖v‖`.
pub fn isometry_check(spec: &NormSpec, v: &Vector, n: usize, seed: u64) -> Result<IsometryCheck> {
    let norm = norm::norm_eval(spec, v)?;
    let anchors: &[Vector] = if v.is_zero() { &[] } else { std::slice::from_ref(v) };
    let sample = sphere_sample(spec, n, seed, anchors)?;
    let lower = sup_norm(&embed(v, &sample)?)?;
    let pass = lower <= norm * (1.0 + tol::EXACT) && lower >= norm * (1.0 - tol::EXACT);
    Ok(IsometryCheck { lower, norm, pass })
}
