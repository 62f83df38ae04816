//! Norms on a finite-dimensional space `V`, the dual norm on `V*`, and
//! constructive norming functionals.
//!
//! Three families are supported:
//!
//! ```text
//! Lp          ‖v‖ = (Σᵢ |vᵢ|^p)^(1/p)            (max |vᵢ| for p = ∞)
//! WeightedLp  ‖v‖ = (Σᵢ |wᵢ vᵢ|^p)^(1/p)         (max |wᵢ vᵢ| for p = ∞)
//! Polytope    ‖v‖ = maxₖ |gₖ(v)|                 (real scalars only)
//! ```
//!
//! Functionals pair bilinearly with vectors, `λ(v) = Σᵢ λᵢ vᵢ`, without
//! conjugation. The dual of `Lp` is `Lq` with `1/p + 1/q = 1`, and the dual of
//! `WeightedLp(p, w)` is `WeightedLp(q, 1/w)`. The dual of a polytope norm is
//! the gauge of the absolutely convex hull of its generators, evaluated by
//! linear programming (see [`crate::polytope`]).

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::polytope;
use crate::rng;
use crate::tol;

pub type Scalar = Complex64;

/// Scalar field of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// An exponent in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(p, "[1, inf]"))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Hölder conjugate.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

/// `(Σ aᵢ^p)^(1/p)` of nonnegative magnitudes, scaled against overflow.
pub fn p_sum<I>(magnitudes: I, p: Exponent) -> f64
where
    I: IntoIterator<Item = f64>,
{
    match p {
        Exponent::Infinity => magnitudes.into_iter().fold(0.0, f64::max),
        Exponent::Finite(1.0) => magnitudes.into_iter().sum(),
        Exponent::Finite(p) => {
            let values: Vec<f64> = magnitudes.into_iter().collect();
            let scale = values.iter().copied().fold(0.0, f64::max);
            if scale == 0.0 || !scale.is_finite() {
                return scale;
            }
            let sum: f64 = values.iter().map(|a| (a / scale).powf(p)).sum();
            scale * sum.powf(1.0 / p)
        }
    }
}

fn unit_phase_conj(z: Scalar) -> Scalar {
    z.conj() / z.norm()
}

macro_rules! coord_vector {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name(Vec<Scalar>);

        impl $name {
            pub fn new(coords: Vec<Scalar>) -> Self {
                Self(coords)
            }

            pub fn from_real(coords: &[f64]) -> Self {
                Self(coords.iter().map(|&x| Scalar::new(x, 0.0)).collect())
            }

            pub fn zeros(dim: usize) -> Self {
                Self(vec![Scalar::new(0.0, 0.0); dim])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[Scalar] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<Scalar> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
            }

            pub fn is_real(&self) -> bool {
                self.0.iter().all(|z| z.im == 0.0)
            }

            /// Real parts of the coordinates.
            pub fn re(&self) -> Vec<f64> {
                self.0.iter().map(|z| z.re).collect()
            }

            pub fn scale(&self, alpha: Scalar) -> Self {
                Self(self.0.iter().map(|z| z * alpha).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }
        }
    };
}

coord_vector!(Vector);
coord_vector!(Functional);

impl Functional {
    /// `λ(v) = Σᵢ λᵢ vᵢ`.
    pub fn apply(&self, v: &Vector) -> Result<Scalar> {
        check_dim(self.dim(), v.dim())?;
        Ok(self.0.iter().zip(&v.0).map(|(l, x)| l * x).sum())
    }

    /// The same coefficients read as a vector of `V**`.
    pub fn to_vector(&self) -> Vector {
        Vector(self.0.clone())
    }
}

impl Vector {
    pub fn to_functional(&self) -> Functional {
        Functional(self.0.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Lp { p: Exponent },
    WeightedLp { p: Exponent, weights: Vec<f64> },
    Polytope { generators: Vec<Vec<f64>> },
}

/// A validated norm on a space of dimension `dim` over `field`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSpec {
    family: Family,
    dim: usize,
    field: Field,
}

impl NormSpec {
    pub fn lp(p: f64, dim: usize, field: Field) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        Ok(NormSpec {
            family: Family::Lp { p: Exponent::new(p)? },
            dim,
            field,
        })
    }

    pub fn weighted_lp(p: f64, weights: Vec<f64>, field: Field) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpec(format!(
                "weights must be finite and positive, found {w}"
            )));
        }
        Ok(NormSpec {
            dim: weights.len(),
            family: Family::WeightedLp {
                p: Exponent::new(p)?,
                weights,
            },
            field,
        })
    }

    /// Polytope norm `maxₖ |gₖ(v)|`; the generators must span the dual space.
    pub fn polytope(generators: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match generators.first() {
            Some(g) => g.len(),
            None => return Err(Error::InvalidSpec("polytope needs generators".into())),
        };
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::InvalidSpec(format!(
                    "generators have mixed lengths {dim} and {}",
                    g.len()
                )));
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidSpec("generator entries must be finite".into()));
            }
        }
        let rank = polytope::rank(&generators);
        if rank < dim {
            return Err(Error::InvalidSpec(format!(
                "generators span a subspace of rank {rank} < {dim}; the norm would not be definite"
            )));
        }
        Ok(NormSpec {
            family: Family::Polytope { generators },
            dim,
            field: Field::Real,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Short human label, e.g. `lp(p=2, dim=3, real)`.
    pub fn label(&self) -> String {
        let field = match self.field {
            Field::Real => "real",
            Field::Complex => "complex",
        };
        match &self.family {
            Family::Lp { p } => format!("lp(p={}, dim={}, {field})", fmt_p(*p), self.dim),
            Family::WeightedLp { p, .. } => {
                format!("wlp(p={}, dim={}, {field})", fmt_p(*p), self.dim)
            }
            Family::Polytope { generators } => {
                format!("polytope(m={}, dim={})", generators.len(), self.dim)
            }
        }
    }

    /// The dual norm as a spec of the same kind, when the family is closed
    /// under duality.
    pub fn dual(&self) -> Option<NormSpec> {
        match &self.family {
            Family::Lp { p } => Some(NormSpec {
                family: Family::Lp { p: p.conjugate() },
                dim: self.dim,
                field: self.field,
            }),
            Family::WeightedLp { p, weights } => Some(NormSpec {
                family: Family::WeightedLp {
                    p: p.conjugate(),
                    weights: weights.iter().map(|w| 1.0 / w).collect(),
                },
                dim: self.dim,
                field: self.field,
            }),
            Family::Polytope { .. } => None,
        }
    }

    fn check_coords(&self, coords: &[Scalar]) -> Result<()> {
        check_dim(self.dim, coords.len())?;
        if coords.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("coordinates must be finite".into()));
        }
        if self.field == Field::Real && coords.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidInput(
                "complex coordinate in a real space".into(),
            ));
        }
        Ok(())
    }

    pub fn check_vector(&self, v: &Vector) -> Result<()> {
        self.check_coords(v.coords())
    }

    pub fn check_functional(&self, lam: &Functional) -> Result<()> {
        self.check_coords(lam.coords())
    }

    /// A standard Gaussian vector of this space (complex Gaussian when the
    /// field is complex).
    pub fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vector {
        Vector::new(rng::gaussian_scalars(rng, self.dim, self.field))
    }

    pub fn random_functional(&self, rng: &mut ChaCha8Rng) -> Functional {
        Functional::new(rng::gaussian_scalars(rng, self.dim, self.field))
    }

    /// A random scalar of the field with modulus spread over several orders
    /// of magnitude.
    pub fn random_scalar(&self, rng: &mut ChaCha8Rng) -> Scalar {
        let modulus = 10f64.powf(rng.gen_range(-2.0..2.0));
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        match self.field {
            Field::Real => Scalar::new(sign * modulus, 0.0),
            Field::Complex => Scalar::from_polar(modulus, rng.gen_range(0.0..std::f64::consts::TAU)),
        }
    }
}

fn fmt_p(p: Exponent) -> String {
    match p {
        Exponent::Infinity => "inf".into(),
        Exponent::Finite(p) => format!("{p}"),
    }
}

fn weighted_magnitudes<'a>(
    coords: &'a [Scalar],
    weights: Option<&'a [f64]>,
) -> impl Iterator<Item = f64> + 'a {
    coords.iter().enumerate().map(move |(i, z)| match weights {
        Some(w) => w[i] * z.norm(),
        None => z.norm(),
    })
}

/// `‖v‖_V`.
pub fn norm_eval(spec: &NormSpec, v: &Vector) -> Result<f64> {
    spec.check_vector(v)?;
    Ok(match &spec.family {
        Family::Lp { p } => p_sum(weighted_magnitudes(v.coords(), None), *p),
        Family::WeightedLp { p, weights } => {
            p_sum(weighted_magnitudes(v.coords(), Some(weights)), *p)
        }
        Family::Polytope { generators } => polytope::gauge_max(generators, &v.re()),
    })
}

/// `‖λ‖_{V*} = sup { |λ(v)| : ‖v‖_V ≤ 1 }`.
pub fn dual_norm_eval(spec: &NormSpec, lam: &Functional) -> Result<f64> {
    spec.check_functional(lam)?;
    Ok(match &spec.family {
        Family::Lp { p } => p_sum(weighted_magnitudes(lam.coords(), None), p.conjugate()),
        Family::WeightedLp { p, weights } => {
            let inverse: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();
            p_sum(weighted_magnitudes(lam.coords(), Some(&inverse)), p.conjugate())
        }
        Family::Polytope { generators } => polytope::dual_norm(generators, &lam.re())?.value,
    })
}

/// A functional `λ` with `‖λ‖_{V*} = 1` and `λ(v) = ‖v‖_V`.
///
/// Ties between equally large coordinates (`p = ∞`) or generators
/// (polytope) resolve to the lowest index.
pub fn norming_functional(spec: &NormSpec, v: &Vector) -> Result<Functional> {
    spec.check_vector(v)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (p, weights) = match &spec.family {
        Family::Lp { p } => (*p, None),
        Family::WeightedLp { p, weights } => (*p, Some(weights.as_slice())),
        Family::Polytope { generators } => {
            let x = v.re();
            let (k, value) = polytope::argmax_generator(generators, &x);
            let sign = if value < 0.0 { -1.0 } else { 1.0 };
            return Ok(Functional::from_real(
                &generators[k].iter().map(|g| sign * g).collect::<Vec<_>>(),
            ));
        }
    };
    let weight = |i: usize| weights.map_or(1.0, |w| w[i]);
    // u = W v, the coordinates the unweighted norm sees.
    let u: Vec<Scalar> = v
        .coords()
        .iter()
        .enumerate()
        .map(|(i, z)| z * weight(i))
        .collect();
    let zero = Scalar::new(0.0, 0.0);
    let coeffs = match p {
        Exponent::Finite(1.0) => u
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if z.norm() == 0.0 {
                    zero
                } else {
                    unit_phase_conj(*z) * weight(i)
                }
            })
            .collect(),
        Exponent::Finite(p) => {
            let n = p_sum(u.iter().map(|z| z.norm()), Exponent::Finite(p));
            u.iter()
                .enumerate()
                .map(|(i, z)| {
                    if z.norm() == 0.0 {
                        zero
                    } else {
                        unit_phase_conj(*z) * ((z.norm() / n).powf(p - 1.0) * weight(i))
                    }
                })
                .collect()
        }
        Exponent::Infinity => {
            let mut best = 0;
            for (i, z) in u.iter().enumerate() {
                if z.norm() > u[best].norm() {
                    best = i;
                }
            }
            let mut coeffs = vec![zero; u.len()];
            coeffs[best] = unit_phase_conj(u[best]) * weight(best);
            coeffs
        }
    };
    Ok(Functional::new(coeffs))
}

/// `max { |λ(v)| : ‖λ‖_{V*} ≤ 1 }`, evaluated on the dual side: the dual
/// norm of `v` as a functional on `V*` for the Lp families, and the largest
/// `|gₖ(v)|` over the extreme points `±gₖ` of the polytope dual ball.
pub fn recover_norm_by_duality(spec: &NormSpec, v: &Vector) -> Result<f64> {
    spec.check_vector(v)?;
    match spec.dual() {
        Some(dual) => dual_norm_eval(&dual, &v.to_functional()),
        None => {
            let Family::Polytope { generators } = &spec.family else {
                unreachable!("only polytope norms lack a closed-form dual spec")
            };
            let x = v.re();
            let mut best = 0.0f64;
            for g in generators {
                let pairing = Functional::from_real(g).apply(&Vector::from_real(&x))?;
                best = best.max(pairing.norm());
            }
            Ok(best)
        }
    }
}

/// A vector `v` with `‖v‖_V = 1` and `λ(v) = ‖λ‖_{V*}`, or `None` for `λ = 0`.
pub fn maximizing_vector(spec: &NormSpec, lam: &Functional) -> Result<Option<Vector>> {
    spec.check_functional(lam)?;
    if lam.is_zero() {
        return Ok(None);
    }
    match spec.dual() {
        Some(dual) => Ok(Some(norming_functional(&dual, &lam.to_vector())?.to_vector())),
        None => {
            let Family::Polytope { generators } = &spec.family else {
                unreachable!("only polytope norms lack a closed-form dual spec")
            };
            let (_, vertex) = polytope::maximizing_vertex(generators, &lam.re())?;
            Ok(Some(Vector::from_real(&vertex)))
        }
    }
}

/// Outcome of testing `|λ(v)| ≤ k ‖v‖` on a set of probe vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    /// Largest observed `|λ(v)| / ‖v‖`.
    pub worst_ratio: f64,
    /// The first probe that violated the bound.
    #[serde(skip)]
    pub witness: Option<Vector>,
}

/// Tests whether `k` is a valid boundedness constant for `λ`, i.e.
/// `|λ(v)| ≤ k ‖v‖` on the maximizing direction of `λ` and on `trials`
/// random Gaussian vectors. Always holds when `k ≥ ‖λ‖_{V*}`.
pub fn bound_constant_check(
    spec: &NormSpec,
    lam: &Functional,
    k: f64,
    trials: usize,
    seed: u64,
) -> Result<BoundCheck> {
    spec.check_functional(lam)?;
    if k.is_nan() || k < 0.0 {
        return Err(Error::InvalidInput(format!("bound constant must be >= 0, got {k}")));
    }
    let mut rng = rng::seeded(seed, 0);
    let mut probes: Vec<Vector> = maximizing_vector(spec, lam)?.into_iter().collect();
    probes.extend((0..trials).map(|_| spec.random_vector(&mut rng)));

    let mut out = BoundCheck {
        holds: true,
        worst_ratio: 0.0,
        witness: None,
    };
    for v in probes {
        let norm = norm_eval(spec, &v)?;
        if norm == 0.0 {
            continue;
        }
        let pairing = lam.apply(&v)?.norm();
        // rounding scale of the pairing sum itself
        let scale: f64 = lam
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(l, x)| l.norm() * x.norm())
            .sum();
        out.worst_ratio = out.worst_ratio.max(pairing / norm);
        if pairing > k * norm * (1.0 + tol::EXACT) + 1e-12 * scale && out.holds {
            out.holds = false;
            out.witness = Some(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: &[f64]) -> Vector {
        Vector::from_real(x)
    }

    fn hexagon() -> NormSpec {
        NormSpec::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap()
    }

    #[test]
    fn norm_examples() {
        let l2 = NormSpec::lp(2.0, 2, Field::Real).unwrap();
        assert_eq!(norm_eval(&l2, &real(&[3.0, 4.0])).unwrap(), 5.0);
        let linf = NormSpec::lp(f64::INFINITY, 2, Field::Real).unwrap();
        assert_eq!(norm_eval(&linf, &real(&[1.0, -2.0])).unwrap(), 2.0);
        assert_eq!(norm_eval(&hexagon(), &real(&[1.0, 1.0])).unwrap(), 2.0);
    }

    #[test]
    fn dual_norm_examples() {
        let l2 = NormSpec::lp(2.0, 2, Field::Real).unwrap();
        assert_eq!(dual_norm_eval(&l2, &Functional::from_real(&[3.0, 4.0])).unwrap(), 5.0);
        let l1 = NormSpec::lp(1.0, 3, Field::Real).unwrap();
        let lam = Functional::from_real(&[1.0, -2.0, 3.0]);
        assert_eq!(dual_norm_eval(&l1, &lam).unwrap(), 3.0);
        let d = dual_norm_eval(&hexagon(), &Functional::from_real(&[1.0, 0.0])).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_dual_uses_reciprocal_weights() {
        let spec = NormSpec::weighted_lp(3.0, vec![2.0, 0.5], Field::Real).unwrap();
        let dual = spec.dual().unwrap();
        let Family::WeightedLp { p, weights } = dual.family() else { panic!() };
        assert_eq!(*p, Exponent::Finite(1.5));
        assert_eq!(weights, &vec![0.5, 2.0]);
        let lam = Functional::from_real(&[1.0, 1.0]);
        let expected = (0.5f64.powf(1.5) + 2f64.powf(1.5)).powf(1.0 / 1.5);
        assert!((dual_norm_eval(&spec, &lam).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn bound_constant_examples() {
        let l2 = NormSpec::lp(2.0, 2, Field::Real).unwrap();
        let lam = Functional::from_real(&[3.0, 4.0]);
        assert!(bound_constant_check(&l2, &lam, 5.0, 100, 7).unwrap().holds);
        let failed = bound_constant_check(&l2, &lam, 4.9, 100, 7).unwrap();
        assert!(!failed.holds);
        let w = failed.witness.unwrap();
        assert!((w.coords()[0].re - 0.6).abs() < 1e-12);
        assert!((w.coords()[1].re - 0.8).abs() < 1e-12);
        for spec in [l2, hexagon()] {
            assert!(bound_constant_check(&spec, &Functional::zeros(2), 0.0, 50, 1).unwrap().holds);
        }
        assert!(bound_constant_check(&hexagon(), &Functional::from_real(&[1.0, 0.0]), -1.0, 1, 1).is_err());
    }

    #[test]
    fn norming_functional_examples() {
        let l2 = NormSpec::lp(2.0, 2, Field::Real).unwrap();
        let lam = norming_functional(&l2, &real(&[3.0, 4.0])).unwrap();
        assert!((lam.coords()[0].re - 0.6).abs() < 1e-15);
        assert!((lam.coords()[1].re - 0.8).abs() < 1e-15);

        let l1 = NormSpec::lp(1.0, 2, Field::Real).unwrap();
        let v = real(&[1.0, -2.0]);
        let lam = norming_functional(&l1, &v).unwrap();
        assert_eq!(lam.re(), vec![1.0, -1.0]);
        assert_eq!(lam.apply(&v).unwrap().re, 3.0);

        let linf = NormSpec::lp(f64::INFINITY, 2, Field::Real).unwrap();
        let v = real(&[2.0, -2.0]);
        let lam = norming_functional(&linf, &v).unwrap();
        assert_eq!(lam.re(), vec![1.0, 0.0]);
        assert_eq!(lam.apply(&v).unwrap().re, 2.0);

        assert_eq!(norming_functional(&l1, &real(&[0.0, 0.0])), Err(Error::ZeroVector));
    }

    #[test]
    fn norming_functional_polytope_flips_sign() {
        let lam = norming_functional(&hexagon(), &real(&[-1.0, -0.5])).unwrap();
        assert_eq!(lam.re(), vec![-1.0, -1.0]);
    }

    #[test]
    fn l1_norming_functional_zero_coordinates() {
        let l1 = NormSpec::lp(1.0, 3, Field::Real).unwrap();
        let lam = norming_functional(&l1, &real(&[0.0, -4.0, 0.0])).unwrap();
        assert_eq!(lam.re(), vec![0.0, -1.0, 0.0]);
    }

    #[test]
    fn complex_norming_functional_is_real_on_v() {
        let spec = NormSpec::lp(3.0, 2, Field::Complex).unwrap();
        let v = Vector::new(vec![Scalar::new(1.0, -2.0), Scalar::new(0.0, 3.0)]);
        let lam = norming_functional(&spec, &v).unwrap();
        let value = lam.apply(&v).unwrap();
        assert!((value.re - norm_eval(&spec, &v).unwrap()).abs() < 1e-12);
        assert!(value.im.abs() < 1e-12);
        assert!((dual_norm_eval(&spec, &lam).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recover_examples() {
        let l1 = NormSpec::lp(1.0, 3, Field::Real).unwrap();
        assert_eq!(recover_norm_by_duality(&l1, &real(&[1.0, -2.0, 3.0])).unwrap(), 6.0);
        assert_eq!(recover_norm_by_duality(&hexagon(), &real(&[0.0, 0.0])).unwrap(), 0.0);
        assert_eq!(recover_norm_by_duality(&hexagon(), &real(&[1.0, 1.0])).unwrap(), 2.0);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(NormSpec::lp(0.5, 2, Field::Real).is_err());
        assert!(NormSpec::lp(f64::NAN, 2, Field::Real).is_err());
        assert!(NormSpec::lp(2.0, 0, Field::Real).is_err());
        assert!(NormSpec::weighted_lp(2.0, vec![1.0, 0.0], Field::Real).is_err());
        assert!(NormSpec::weighted_lp(2.0, vec![1.0, -3.0], Field::Real).is_err());
        assert!(NormSpec::polytope(vec![vec![1.0, 1.0], vec![2.0, 2.0]]).is_err());
        assert!(NormSpec::polytope(vec![]).is_err());
        assert!(NormSpec::polytope(vec![vec![1.0, 0.0], vec![1.0]]).is_err());
    }

    #[test]
    fn dimension_and_field_errors() {
        let l2 = NormSpec::lp(2.0, 2, Field::Real).unwrap();
        assert_eq!(
            norm_eval(&l2, &real(&[1.0, 2.0, 3.0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        let complex = Vector::new(vec![Scalar::new(0.0, 1.0), Scalar::new(0.0, 0.0)]);
        assert!(matches!(norm_eval(&l2, &complex), Err(Error::InvalidInput(_))));
        assert!(dual_norm_eval(&hexagon(), &Functional::from_real(&[1.0])).is_err());
    }

    #[test]
    fn exponent_conjugates() {
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Finite(3.0).conjugate(), Exponent::Finite(1.5));
    }
}
