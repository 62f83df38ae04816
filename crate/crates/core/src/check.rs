//! Records of individual inequality checks.

use serde::{Serialize, Serializer};

use crate::function_space::{ScalarFunction, VValuedFunction};
use crate::io::format_scalar;
use crate::norm::{Scalar, Vector};
use crate::tol;

/// The input that produced a check's left-hand side.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Values(Vec<Scalar>),
    Rows(Vec<Vec<Scalar>>),
}

impl From<&ScalarFunction> for Witness {
    fn from(f: &ScalarFunction) -> Self {
        Witness::Values(f.values().to_vec())
    }
}

impl From<&Vector> for Witness {
    fn from(v: &Vector) -> Self {
        Witness::Values(v.coords().to_vec())
    }
}

impl From<&VValuedFunction> for Witness {
    fn from(f: &VValuedFunction) -> Self {
        Witness::Rows(f.rows().iter().map(|r| r.coords().to_vec()).collect())
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonScalar {
    Real(f64),
    Complex(String),
}

fn json_scalar(z: &Scalar) -> JsonScalar {
    if z.im == 0.0 {
        JsonScalar::Real(z.re)
    } else {
        JsonScalar::Complex(format_scalar(*z))
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::Values(v) => v.iter().map(json_scalar).collect::<Vec<_>>().serialize(s),
            Witness::Rows(rows) => rows
                .iter()
                .map(|r| r.iter().map(json_scalar).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

/// One evaluated inequality `lhs ≤ rhs` (or equality, for identity checks).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The relation being checked, in formula form.
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub equality: bool,
}

impl CheckRecord {
    /// `lhs ≤ rhs` within relative slack `rel`.
    pub fn leq(name: &str, relation: &str, lhs: f64, rhs: f64, rel: f64) -> Self {
        CheckRecord {
            name: name.into(),
            relation: relation.into(),
            lhs,
            rhs,
            pass: tol::leq(lhs, rhs, rel),
            witness: None,
            equality: false,
        }
    }

    /// `lhs = rhs` within `rel * max(1, |lhs|, |rhs|)`.
    pub fn eq(name: &str, relation: &str, lhs: f64, rhs: f64, rel: f64) -> Self {
        CheckRecord {
            name: name.into(),
            relation: relation.into(),
            lhs,
            rhs,
            pass: tol::close(lhs, rhs, rel),
            witness: None,
            equality: true,
        }
    }

    /// `|lhs - rhs| <= abs_tol`.
    pub fn within(name: &str, relation: &str, lhs: f64, rhs: f64, abs_tol: f64) -> Self {
        CheckRecord {
            name: name.into(),
            relation: relation.into(),
            lhs,
            rhs,
            pass: (lhs - rhs).abs() <= abs_tol,
            witness: None,
            equality: true,
        }
    }

    /// A strict inequality `lhs < rhs`.
    pub fn lt(name: &str, relation: &str, lhs: f64, rhs: f64) -> Self {
        CheckRecord {
            name: name.into(),
            relation: relation.into(),
            lhs,
            rhs,
            pass: lhs < rhs,
            witness: None,
            equality: false,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<Witness>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    /// Amount by which the relation is violated (negative when it holds with
    /// room to spare).
    pub fn excess(&self) -> f64 {
        if self.equality {
            (self.lhs - self.rhs).abs()
        } else {
            self.lhs - self.rhs
        }
    }
}
