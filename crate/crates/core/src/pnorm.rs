//! Bracketing the `p → p` norm of a kernel operator.
//!
//! Lower bounds come from nonlinear power iteration on the entrywise absolute
//! kernel `|t|`: for a nonnegative matrix `A` and exponents `p`, `q = p/(p-1)`,
//!
//! ```text
//! y = A x,   z = Aᵀ y^(p-1),   x ← z^(q-1) / ‖z^(q-1)‖_p
//! ```
//!
//! increases `‖Ax‖_p / ‖x‖_p` monotonically. Every reported value is the ratio
//! evaluated on its witness, so it is a certified lower bound.
//!
//! The upper bound `a^(1-1/p) · b^(1/p)` combines the exact row and column sum
//! constants. It is a heuristic certificate checked against the search.

use rand::Rng;
use serde::Serialize;

use crate::check::{CheckRecord, Witness};
use crate::error::{check_dim, Error, Result};
use crate::function_space::{self as fs, ScalarFunction, VValuedFunction};
use crate::kernel::{self, Kernel};
use crate::norm::{Field, Vector};
use crate::rng;
use crate::tol;

/// Settings for the restarted power iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub iters: usize,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            restarts: 8,
            iters: 200,
            tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PNormEstimate {
    pub value: f64,
    /// Nonnegative function attaining `value`.
    pub witness: ScalarFunction,
    /// Whether the restart that produced `value` met the convergence tolerance.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorEstimate {
    pub value: f64,
    pub witness: VValuedFunction,
}

pub(crate) fn open_exponent(p: f64) -> Result<f64> {
    if p.is_finite() && p > 1.0 {
        Ok(p)
    } else {
        Err(Error::InvalidExponent(p, "(1, inf)"))
    }
}

fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum())
        .collect()
}

fn mat_t_vec(a: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n).map(|j| (0..n).map(|i| a[i][j] * y[i]).sum()).collect()
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    crate::norm::p_sum(x.iter().map(|v| v.abs()), crate::norm::Exponent::Finite(p))
}

fn ratio(a: &[Vec<f64>], x: &[f64], p: f64) -> f64 {
    let d = p_norm(x, p);
    if d == 0.0 {
        0.0
    } else {
        p_norm(&mat_vec(a, x), p) / d
    }
}

/// Runs one power iteration from `start`. Returns `(ratio, witness, converged)`.
fn power_iterate(a: &[Vec<f64>], p: f64, start: Vec<f64>, opts: &SearchOptions) -> (f64, Vec<f64>, bool) {
    let q = p / (p - 1.0);
    let mut x = start;
    let mut value = ratio(a, &x, p);
    for _ in 0..opts.iters {
        let y = mat_vec(a, &x);
        let z = mat_t_vec(a, &y.iter().map(|v| v.powf(p - 1.0)).collect::<Vec<_>>());
        let mut next: Vec<f64> = z.iter().map(|v| v.powf(q - 1.0)).collect();
        let scale = p_norm(&next, p);
        if scale == 0.0 || !scale.is_finite() {
            // Ax = 0 or Aᵀ vanishes on the image; nothing left to improve
            return (value, x, true);
        }
        next.iter_mut().for_each(|v| *v /= scale);
        let next_value = ratio(a, &next, p);
        if next_value < value {
            // monotone in exact arithmetic; a drop means rounding has taken over
            return (value, x, true);
        }
        let done = next_value - value <= opts.tol * next_value;
        x = next;
        value = next_value;
        if done {
            return (value, x, true);
        }
    }
    (value, x, false)
}

/// Lower bound for the `p → p` norm of `|t|` (equal to the norm of `t` for
/// nonnegative kernels), from the all-ones start plus `restarts` random
/// positive starts. Restart `r` draws from stream `r` of `seed`, and results
/// are combined by maximum with the lowest restart winning ties.
pub fn p_norm_scalar_lower_with(t: &Kernel, p: f64, seed: u64, opts: &SearchOptions) -> Result<PNormEstimate> {
    let p = open_exponent(p)?;
    let a = t.abs_rows();
    let n = t.size();
    let starts = std::iter::once(vec![1.0; n]).chain((0..opts.restarts).map(|r| {
        let mut rng = rng::seeded(seed, 100 + r as u64);
        (0..n).map(|_| rng.gen_range(0.05..1.0)).collect()
    }));
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for start in starts {
        let run = power_iterate(&a, p, start, opts);
        if best.as_ref().is_none_or(|b| run.0 > b.0) {
            best = Some(run);
        }
    }
    let (_, x, converged) = best.expect("at least one start");
    let value = ratio(&a, &x, p);
    Ok(PNormEstimate {
        value,
        witness: ScalarFunction::from_real(&x)?,
        converged,
    })
}

pub fn p_norm_scalar_lower(t: &Kernel, p: f64, seed: u64, iters: usize) -> Result<PNormEstimate> {
    let opts = SearchOptions {
        iters,
        ..SearchOptions::default()
    };
    p_norm_scalar_lower_with(t, p, seed, &opts)
}

/// `a^(1-1/p) · b^(1/p)`.
pub fn p_norm_upper(t: &Kernel, p: f64) -> Result<f64> {
    let p = open_exponent(p)?;
    let a = kernel::bound_inf(t);
    let b = kernel::bound_one(t);
    Ok(a.powf(1.0 - 1.0 / p) * b.powf(1.0 / p))
}

/// `‖T_V f‖_{p,V} / ‖f‖_{p,V}` with `V` the functions on `E` under the 1-norm.
pub fn vector_ratio(t: &Kernel, f: &VValuedFunction, p: f64) -> Result<f64> {
    check_dim(t.size(), f.dim())?;
    let field = if t.is_real() && f.rows().iter().all(Vector::is_real) {
        Field::Real
    } else {
        Field::Complex
    };
    let v = fs::ell1_space(t.size(), field)?;
    let denom = fs::norm_p_v(f, &v, p)?;
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(fs::norm_p_v(&kernel::apply_vector(t, f)?, &v, p)? / denom)
}

/// Lower bound for the best `B_p` with `‖T_V f‖_{p,V} ≤ B_p ‖f‖_{p,V}`, `V` the
/// functions on `E` with the 1-norm. Candidates are the diagonal lift of the
/// scalar search witness, rank-one lifts of it, and random matrices.
pub fn vector_p_lower_with(t: &Kernel, p: f64, seed: u64, opts: &SearchOptions) -> Result<VectorEstimate> {
    let p = open_exponent(p)?;
    let n = t.size();
    let scalar = p_norm_scalar_lower_with(t, p, seed, opts)?;

    let mut candidates = vec![fs::diag_embed(&scalar.witness)];
    for r in 0..opts.restarts {
        let mut rng = rng::seeded(seed, 200 + r as u64);
        let profile: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let lifted = scalar
            .witness
            .values()
            .iter()
            .map(|x| Vector::new(profile.iter().map(|u| x * *u).collect()))
            .collect();
        candidates.push(VValuedFunction::new(lifted)?);
        let random = (0..n)
            .map(|_| Vector::new(rng::gaussian_scalars(&mut rng, n, Field::Real)))
            .collect();
        candidates.push(VValuedFunction::new(random)?);
    }

    let mut best: Option<(f64, VValuedFunction)> = None;
    for f in candidates {
        let value = vector_ratio(t, &f, p)?;
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, f));
        }
    }
    let (value, witness) = best.expect("at least one candidate");
    Ok(VectorEstimate { value, witness })
}

pub fn vector_p_lower(t: &Kernel, p: f64, seed: u64, iters: usize) -> Result<VectorEstimate> {
    let opts = SearchOptions {
        iters,
        ..SearchOptions::default()
    };
    vector_p_lower_with(t, p, seed, &opts)
}

pub const SCHUR_CONSEQUENCE: &str = "kernel.schur_consequence";

/// `(Σ_x (Σ_z |t(x,z)| |h(z)|)^p)^(1/p)`.
pub fn schur_lhs(t: &Kernel, p: f64, h: &ScalarFunction) -> Result<f64> {
    let p = open_exponent(p)?;
    check_dim(t.size(), h.len())?;
    let mags = h.magnitudes();
    let inner: Vec<f64> = t
        .abs_rows()
        .iter()
        .map(|row| row.iter().zip(&mags).map(|(k, m)| k * m).sum())
        .collect();
    Ok(p_norm(&inner, p))
}

/// Checks `(Σ_x (Σ_z |t(x,z)| |h(z)|)^p)^(1/p) ≤ B_p ‖h‖_p`.
pub fn check_schur_consequence(t: &Kernel, p: f64, bp: f64, h: &ScalarFunction) -> Result<CheckRecord> {
    let lhs = schur_lhs(t, p, h)?;
    let rhs = bp * fs::norm_p(h, p)?;
    Ok(CheckRecord::leq(
        SCHUR_CONSEQUENCE,
        "(Σ_x(Σ_z|t(x,z)||h(z)|)^p)^(1/p) ≤ B_p‖h‖_p",
        lhs,
        rhs,
        tol::EXACT,
    )
    .with_witness(h))
}

/// Everything known about one kernel at one exponent.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub p: f64,
    pub a: f64,
    pub b: f64,
    /// Power-iteration lower bound for the scalar norm of `|t|`.
    pub scalar_lower: f64,
    pub converged: bool,
    #[serde(rename = "Bp_lower")]
    pub bp_lower: f64,
    #[serde(rename = "Bp_upper")]
    pub bp_upper: f64,
    pub witnesses: BoundsWitnesses,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsWitnesses {
    pub scalar: Witness,
    pub vector: Witness,
}

pub const SANDWICH_LOWER: &str = "kernel.sandwich.scalar_le_vector";
pub const SANDWICH_UPPER: &str = "kernel.sandwich.vector_le_upper";

/// Computes `a`, `b`, the `B_p` bracket, and spot-checks the mixed-norm
/// consequence on `trials` random `h` with `B_p = Bp_lower + 1e-6`.
pub fn bounds_report(t: &Kernel, p: f64, seed: u64, trials: usize, opts: &SearchOptions) -> Result<BoundsReport> {
    let p = open_exponent(p)?;
    let scalar = p_norm_scalar_lower_with(t, p, seed, opts)?;
    let vector = vector_p_lower_with(t, p, seed, opts)?;
    let upper = p_norm_upper(t, p)?;

    let mut checks = vec![
        CheckRecord::leq(SANDWICH_LOWER, "scalar lower ≤ B_p lower", scalar.value, vector.value, tol::EXACT)
            .with_witness(&scalar.witness),
        CheckRecord::leq(
            SANDWICH_UPPER,
            "B_p lower ≤ a^(1-1/p) b^(1/p)",
            vector.value,
            upper + tol::SAMPLED,
            0.0,
        )
        .with_witness(&vector.witness),
    ];
    let field = if t.is_real() { Field::Real } else { Field::Complex };
    let mut rng = rng::seeded(seed, 300);
    for _ in 0..trials {
        let h = ScalarFunction::new(rng::gaussian_scalars(&mut rng, t.size(), field))?;
        checks.push(check_schur_consequence(t, p, vector.value + tol::SAMPLED, &h)?);
    }
    Ok(BoundsReport {
        p,
        a: kernel::bound_inf(t),
        b: kernel::bound_one(t),
        scalar_lower: scalar.value,
        converged: scalar.converged,
        bp_lower: vector.value,
        bp_upper: upper,
        witnesses: BoundsWitnesses {
            scalar: (&scalar.witness).into(),
            vector: (&vector.witness).into(),
        },
        checks,
    })
}
