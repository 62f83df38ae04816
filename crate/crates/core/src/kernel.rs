//! Kernel operators `T(f)(x) = Σ_y t(x, y) f(y)` on functions over a finite
//! set, their vector-valued versions `T_V`, and the exact row/column sum
//! bounds.
//!
//! ```text
//! a = max_x Σ_y |t(x, y)|     smallest constant with ‖Tf‖_∞ ≤ a ‖f‖_∞
//! b = max_y Σ_x |t(x, y)|     smallest constant with ‖Tf‖_1 ≤ b ‖f‖_1
//! ```
//!
//! The same constants bound `T_V` on `V`-valued functions for any norm on `V`.

use crate::check::CheckRecord;
use crate::error::{check_dim, Error, Result};
use crate::function_space::{self as fs, ScalarFunction, VValuedFunction};
use crate::norm::{NormSpec, Scalar, Vector};
use crate::tol;

/// A square matrix `t(x, y)` over `E × E`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    size: usize,
    entries: Vec<Scalar>,
}

impl Kernel {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidInput("kernel must be nonempty".into()));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidInput(format!(
                    "kernel must be square: row {x} has {} entries, expected {size}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("kernel entries must be finite".into()));
        }
        Ok(Kernel { size, entries })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn identity(size: usize) -> Result<Self> {
        let rows = (0..size)
            .map(|x| (0..size).map(|y| if x == y { 1.0 } else { 0.0 }).collect())
            .collect::<Vec<Vec<f64>>>();
        Self::from_real_rows(&rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> Scalar {
        self.entries[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[Scalar] {
        &self.entries[x * self.size..(x + 1) * self.size]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// `|t(x, y)|` entrywise, row-major.
    pub fn abs_rows(&self) -> Vec<Vec<f64>> {
        (0..self.size)
            .map(|x| self.row(x).iter().map(|z| z.norm()).collect())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.size).map(|x| self.row(x).to_vec()).collect()
    }

    /// Kernel with `delta` added to every entry's real part.
    pub fn shifted(&self, delta: f64) -> Kernel {
        Kernel {
            size: self.size,
            entries: self.entries.iter().map(|z| z + delta).collect(),
        }
    }
}

pub fn apply_scalar(t: &Kernel, f: &ScalarFunction) -> Result<ScalarFunction> {
    check_dim(t.size, f.len())?;
    let values = (0..t.size)
        .map(|x| t.row(x).iter().zip(f.values()).map(|(k, v)| k * v).sum())
        .collect();
    ScalarFunction::new(values)
}

/// `T_V(f)(x) = Σ_y t(x, y) f(y)` with the sum taken in `V`. For `V` the
/// functions on `E` this is the matrix product `t · f`.
pub fn apply_vector(t: &Kernel, f: &VValuedFunction) -> Result<VValuedFunction> {
    check_dim(t.size, f.len())?;
    let dim = f.dim();
    let rows = (0..t.size)
        .map(|x| {
            let mut acc = vec![Scalar::new(0.0, 0.0); dim];
            for (k, fy) in t.row(x).iter().zip(f.rows()) {
                for (a, v) in acc.iter_mut().zip(fy.coords()) {
                    *a += k * v;
                }
            }
            Vector::new(acc)
        })
        .collect();
    VValuedFunction::new(rows)
}

/// Maximum absolute row sum.
pub fn bound_inf(t: &Kernel) -> f64 {
    (0..t.size)
        .map(|x| t.row(x).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Maximum absolute column sum.
pub fn bound_one(t: &Kernel) -> f64 {
    (0..t.size)
        .map(|y| (0..t.size).map(|x| t.get(x, y).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub const INF_SCALAR: &str = "kernel.inf_bound.scalar";
pub const INF_VECTOR: &str = "kernel.inf_bound.vector";
pub const ONE_SCALAR: &str = "kernel.one_bound.scalar";
pub const ONE_VECTOR: &str = "kernel.one_bound.vector";

/// `‖Tf‖_∞ ≤ a ‖f‖_∞` and `‖T_V f‖_{∞,V} ≤ a ‖f‖_{∞,V}` with the given `a`.
pub fn check_inf_bounds_with(
    t: &Kernel,
    a: f64,
    f_scalar: &ScalarFunction,
    f_vector: &VValuedFunction,
    spec: &NormSpec,
) -> Result<[CheckRecord; 2]> {
    let tf = apply_scalar(t, f_scalar)?;
    let tv = apply_vector(t, f_vector)?;
    Ok([
        CheckRecord::leq(
            INF_SCALAR,
            "‖Tf‖_∞ ≤ a‖f‖_∞",
            fs::norm_inf(&tf),
            a * fs::norm_inf(f_scalar),
            tol::EXACT,
        )
        .with_witness(f_scalar),
        CheckRecord::leq(
            INF_VECTOR,
            "‖T_V f‖_{∞,V} ≤ a‖f‖_{∞,V}",
            fs::norm_inf_v(&tv, spec)?,
            a * fs::norm_inf_v(f_vector, spec)?,
            tol::EXACT,
        )
        .with_witness(f_vector),
    ])
}

pub fn check_inf_bounds(
    t: &Kernel,
    f_scalar: &ScalarFunction,
    f_vector: &VValuedFunction,
    spec: &NormSpec,
) -> Result<[CheckRecord; 2]> {
    check_inf_bounds_with(t, bound_inf(t), f_scalar, f_vector, spec)
}

/// `‖Tf‖_1 ≤ b ‖f‖_1` and `‖T_V f‖_{1,V} ≤ b ‖f‖_{1,V}` with the given `b`.
pub fn check_one_bounds_with(
    t: &Kernel,
    b: f64,
    f_scalar: &ScalarFunction,
    f_vector: &VValuedFunction,
    spec: &NormSpec,
) -> Result<[CheckRecord; 2]> {
    let tf = apply_scalar(t, f_scalar)?;
    let tv = apply_vector(t, f_vector)?;
    Ok([
        CheckRecord::leq(
            ONE_SCALAR,
            "‖Tf‖_1 ≤ b‖f‖_1",
            fs::norm_1(&tf),
            b * fs::norm_1(f_scalar),
            tol::EXACT,
        )
        .with_witness(f_scalar),
        CheckRecord::leq(
            ONE_VECTOR,
            "‖T_V f‖_{1,V} ≤ b‖f‖_{1,V}",
            fs::norm_1_v(&tv, spec)?,
            b * fs::norm_1_v(f_vector, spec)?,
            tol::EXACT,
        )
        .with_witness(f_vector),
    ])
}

pub fn check_one_bounds(
    t: &Kernel,
    f_scalar: &ScalarFunction,
    f_vector: &VValuedFunction,
    spec: &NormSpec,
) -> Result<[CheckRecord; 2]> {
    check_one_bounds_with(t, bound_one(t), f_scalar, f_vector, spec)
}
