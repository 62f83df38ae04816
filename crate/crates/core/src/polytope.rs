//! Small dense linear algebra behind the polytope norm
//! `‖v‖ = maxₖ |gₖ(v)|`.
//!
//! The dual norm is the value of the linear program
//!
//! ```text
//! minimize Σₖ |cₖ|   subject to   Σₖ cₖ gₖ = λ
//! ```
//!
//! An optimum sits at a basic solution, i.e. on a set of `dim` linearly
//! independent generators, so at desk scale every basis is enumerated and
//! solved directly.

use itertools::Itertools;

use crate::error::{Error, Result};

/// Upper limit on the number of bases enumerated for a single LP.
pub const MAX_BASES: usize = 1_000_000;

const PIVOT_EPS: f64 = 1e-12;

/// Numerical rank by Gaussian elimination with partial pivoting.
pub fn rank(rows: &[Vec<f64>]) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let pivot = (rank..a.len())
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= PIVOT_EPS * scale {
            continue;
        }
        a.swap(rank, pivot);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b`; `None` when `a` is (numerically)
/// singular.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= PIVOT_EPS * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (top, below) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (offset, row) in below.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for (x, p) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x -= factor * p;
            }
            b[col + 1 + offset] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - tail) / a[i][i];
    }
    Some(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Index and value of the generator with the largest `|gₖ(x)|`, lowest index
/// on ties.
pub fn argmax_generator(generators: &[Vec<f64>], x: &[f64]) -> (usize, f64) {
    let mut best = (0, dot(&generators[0], x));
    for (k, g) in generators.iter().enumerate().skip(1) {
        let value = dot(g, x);
        if value.abs() > best.1.abs() {
            best = (k, value);
        }
    }
    best
}

pub fn gauge_max(generators: &[Vec<f64>], x: &[f64]) -> f64 {
    argmax_generator(generators, x).1.abs()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn check_size(generators: &[Vec<f64>], dim: usize) -> Result<()> {
    let bases = binomial(generators.len(), dim);
    if bases > MAX_BASES {
        return Err(Error::InvalidSpec(format!(
            "polytope with {} generators in dimension {dim} needs {bases} bases, limit {MAX_BASES}",
            generators.len()
        )));
    }
    Ok(())
}

/// Optimal decomposition `λ = Σₖ cₖ gₖ` with minimal `Σₖ |cₖ|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub value: f64,
    pub coeffs: Vec<f64>,
}

/// Dual norm of `lam` under the polytope norm spanned by `generators`.
pub fn dual_norm(generators: &[Vec<f64>], lam: &[f64]) -> Result<Decomposition> {
    let dim = lam.len();
    check_size(generators, dim)?;
    let mut best: Option<Decomposition> = None;
    for basis in (0..generators.len()).combinations(dim) {
        // columns are the chosen generators
        let a: Vec<Vec<f64>> = (0..dim)
            .map(|row| basis.iter().map(|&k| generators[k][row]).collect())
            .collect();
        let Some(c) = solve(a, lam.to_vec()) else {
            continue;
        };
        let value: f64 = c.iter().map(|x| x.abs()).sum();
        if best.as_ref().is_none_or(|b| value < b.value) {
            let mut coeffs = vec![0.0; generators.len()];
            for (&k, ck) in basis.iter().zip(&c) {
                coeffs[k] = *ck;
            }
            best = Some(Decomposition { value, coeffs });
        }
    }
    best.ok_or_else(|| Error::InvalidSpec("generators do not span the dual space".into()))
}

/// The vertex `v` of the unit ball `{ maxₖ |gₖ(v)| ≤ 1 }` maximizing `λ(v)`,
/// with that maximum. Vertices are enumerated from every basis and sign
/// pattern; the first maximizer in enumeration order wins.
pub fn maximizing_vertex(generators: &[Vec<f64>], lam: &[f64]) -> Result<(f64, Vec<f64>)> {
    let dim = lam.len();
    check_size(generators, dim)?;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for basis in (0..generators.len()).combinations(dim) {
        let a: Vec<Vec<f64>> = basis.iter().map(|&k| generators[k].clone()).collect();
        for signs in 0u64..(1 << dim) {
            let rhs: Vec<f64> = (0..dim)
                .map(|i| if signs >> i & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let Some(v) = solve(a.clone(), rhs) else {
                break;
            };
            if gauge_max(generators, &v) > 1.0 + 1e-9 {
                continue;
            }
            let value = dot(lam, &v);
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, v));
            }
        }
    }
    best.ok_or_else(|| Error::InvalidSpec("generators do not span the dual space".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> Vec<Vec<f64>> {
        vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&hexagon()), 2);
        assert_eq!(rank(&[vec![1.0, 2.0], vec![2.0, 4.0]]), 1);
        assert_eq!(rank(&[vec![0.0, 0.0]]), 0);
    }

    #[test]
    fn solve_small_system() {
        let x = solve(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        assert!(solve(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 2.0]).is_none());
    }

    #[test]
    fn hexagon_dual_norms() {
        // (1,1) is itself a generator, so its dual norm is 1, not 2.
        let d = dual_norm(&hexagon(), &[1.0, 1.0]).unwrap();
        assert!((d.value - 1.0).abs() < 1e-15);
        assert_eq!(d.coeffs, vec![0.0, 0.0, 1.0]);
        // (1,-1) = g0 - g1
        assert!((dual_norm(&hexagon(), &[1.0, -1.0]).unwrap().value - 2.0).abs() < 1e-15);
        assert_eq!(dual_norm(&hexagon(), &[0.0, 0.0]).unwrap().value, 0.0);
    }

    #[test]
    fn vertex_and_lp_values_agree() {
        for lam in [[1.0, 0.0], [0.3, -2.0], [-1.0, -1.0], [2.0, 0.5]] {
            let (value, v) = maximizing_vertex(&hexagon(), &lam).unwrap();
            assert!(gauge_max(&hexagon(), &v) <= 1.0 + 1e-12);
            assert!((value - dual_norm(&hexagon(), &lam).unwrap().value).abs() < 1e-12);
        }
    }

    #[test]
    fn oversized_polytopes_are_rejected() {
        let gens: Vec<Vec<f64>> = (0..40)
            .map(|k| (0..10).map(|i| ((k * 7 + i * 3) % 11) as f64).collect())
            .collect();
        assert!(dual_norm(&gens, &[1.0; 10]).is_err());
    }
}
