//! Scalar and `V`-valued functions on a finite index set `E = {0, …, n-1}`.
//!
//! ```text
//! ‖f‖_∞     = max_x |f(x)|          ‖f‖_{∞,V} = max_x ‖f(x)‖_V
//! ‖f‖_1     = Σ_x |f(x)|            ‖f‖_{1,V} = Σ_x ‖f(x)‖_V
//! ‖f‖_p     = (Σ_x |f(x)|^p)^(1/p)  ‖f‖_{p,V} = (Σ_x ‖f(x)‖_V^p)^(1/p)
//! ```
//!
//! When `V` is itself the space of scalar functions on `E` with the 1-norm, a
//! `V`-valued function is an `|E| × |E|` matrix `f(x, z)` and `‖f‖_{p,V}` is the
//! mixed `ℓp(ℓ1)` norm.

use crate::error::{check_dim, Error, Result};
use crate::norm::{self, p_sum, Exponent, Field, NormSpec, Scalar, Vector};

/// A finite nonempty index set, identified with `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexSet(usize);

impl IndexSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInput("index set must be nonempty".into()));
        }
        Ok(IndexSet(size))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFunction(Vec<Scalar>);

impl ScalarFunction {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        IndexSet::new(values.len())?;
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("function values must be finite".into()));
        }
        Ok(ScalarFunction(values))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    pub fn zeros(size: usize) -> Result<Self> {
        Self::new(vec![Scalar::new(0.0, 0.0); size])
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet(self.0.len())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.norm()).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(ScalarFunction(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, alpha: Scalar) -> Self {
        ScalarFunction(self.0.iter().map(|z| z * alpha).collect())
    }
}

/// A map `E → V`, stored as one coordinate vector per point of `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct VValuedFunction {
    rows: Vec<Vector>,
}

impl VValuedFunction {
    pub fn new(rows: Vec<Vector>) -> Result<Self> {
        IndexSet::new(rows.len())?;
        let dim = rows[0].dim();
        for row in &rows {
            check_dim(dim, row.dim())?;
        }
        Ok(VValuedFunction { rows })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Vector::from_real(r)).collect())
    }

    pub fn zeros(size: usize, dim: usize) -> Result<Self> {
        Self::new(vec![Vector::zeros(dim); size])
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn at(&self, x: usize, z: usize) -> Scalar {
        self.rows[x].coords()[z]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        check_dim(self.dim(), other.dim())?;
        Ok(VValuedFunction {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, alpha: Scalar) -> Self {
        VValuedFunction {
            rows: self.rows.iter().map(|r| r.scale(alpha)).collect(),
        }
    }

    fn row_norms(&self, spec: &NormSpec) -> Result<Vec<f64>> {
        self.rows.iter().map(|r| norm::norm_eval(spec, r)).collect()
    }
}

/// Finite exponent in `(1, ∞)`, or `[1, ∞)` when `allow_one`.
fn finite_exponent(p: f64, allow_one: bool) -> Result<Exponent> {
    let ok = p.is_finite() && if allow_one { p >= 1.0 } else { p > 1.0 };
    if ok {
        Ok(Exponent::Finite(p))
    } else if allow_one {
        Err(Error::InvalidExponent(p, "[1, inf)"))
    } else {
        Err(Error::InvalidExponent(p, "(1, inf)"))
    }
}

pub fn norm_inf(f: &ScalarFunction) -> f64 {
    p_sum(f.magnitudes(), Exponent::Infinity)
}

pub fn norm_1(f: &ScalarFunction) -> f64 {
    p_sum(f.magnitudes(), Exponent::Finite(1.0))
}

pub fn norm_p(f: &ScalarFunction, p: f64) -> Result<f64> {
    Ok(p_sum(f.magnitudes(), finite_exponent(p, false)?))
}

pub fn norm_inf_v(f: &VValuedFunction, spec: &NormSpec) -> Result<f64> {
    Ok(p_sum(f.row_norms(spec)?, Exponent::Infinity))
}

pub fn norm_1_v(f: &VValuedFunction, spec: &NormSpec) -> Result<f64> {
    Ok(p_sum(f.row_norms(spec)?, Exponent::Finite(1.0)))
}

/// `‖f‖_{p,V}` for `1 ≤ p < ∞`.
pub fn norm_p_v(f: &VValuedFunction, spec: &NormSpec, p: f64) -> Result<f64> {
    let p = finite_exponent(p, true)?;
    Ok(p_sum(f.row_norms(spec)?, p))
}

/// The space of scalar functions on a set of `size` points with the 1-norm.
pub fn ell1_space(size: usize, field: Field) -> Result<NormSpec> {
    NormSpec::lp(1.0, size, field)
}

/// `(Σ_x (Σ_z |f(x, z)|)^p)^(1/p)` written out directly on the matrix.
pub fn mixed_norm(f: &VValuedFunction, p: f64) -> Result<f64> {
    let p = finite_exponent(p, true)?.value();
    let sum: f64 = f
        .rows()
        .iter()
        .map(|row| row.coords().iter().map(|z| z.norm()).sum::<f64>().powf(p))
        .sum();
    Ok(sum.powf(1.0 / p))
}

/// The lift `H(x, z) = h(x)` for `x = z`, `0` otherwise, whose mixed norm
/// equals `‖h‖_p` for every `p`.
pub fn diag_embed(h: &ScalarFunction) -> VValuedFunction {
    let n = h.len();
    let rows = (0..n)
        .map(|x| {
            let mut row = Vector::zeros(n).into_coords();
            row[x] = h.values()[x];
            Vector::new(row)
        })
        .collect();
    VValuedFunction { rows }
}
