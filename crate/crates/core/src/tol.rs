//! Comparison tolerances shared by every check in the crate.

/// Relative slack for closed-form and exact evaluation paths.
pub const EXACT: f64 = 1e-9;

/// Relative slack for sampled and iterative paths.
pub const SAMPLED: f64 = 1e-6;

/// `lhs <= rhs` up to `rel` times the larger magnitude of the two sides.
pub fn leq(lhs: f64, rhs: f64, rel: f64) -> bool {
    lhs <= rhs + rel * lhs.abs().max(rhs.abs())
}

/// `|a - b| <= rel * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * 1f64.max(a.abs()).max(b.abs())
}
