//! Loaders for norm specs, kernels, and functions on `E`.
//!
//! * Norm specs are JSON objects:
//!   `{"family": "lp"|"wlp"|"polytope", "p": number|"inf", "dim": int,
//!     "weights": [...], "generators": [[...], ...], "field": "real"|"complex"}`.
//! * Kernels are CSV (`|E|` rows of `|E|` real numbers) or JSON arrays of rows,
//!   where JSON entries may be numbers or complex strings such as `"1.5-2i"`.
//! * Scalar functions are CSV with one value per row or a flat JSON array.
//!   `V`-valued functions are CSV with one vector per row or a JSON array of
//!   rows; with `V` the functions on `E` they are square matrices.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::function_space::{ScalarFunction, VValuedFunction};
use crate::kernel::Kernel;
use crate::norm::{Exponent, Family, Field, NormSpec, Scalar, Vector};

/// `re+imi` form, dropping a zero imaginary part.
pub fn format_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im.is_sign_negative() {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `3`, `-1.5e2`, `2i`, `-i`, `1+2i`, `0.5-3e-1i`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid scalar {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Scalar::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Scalar::new(re, im))
}

fn json_scalar(value: &Value) -> Result<Scalar> {
    match value {
        Value::Number(n) => n
            .as_f64()
            .map(|x| Scalar::new(x, 0.0))
            .ok_or_else(|| Error::Parse(format!("number out of range: {n}"))),
        Value::String(s) => parse_scalar(s),
        other => Err(Error::Parse(format!("expected a number or complex string, found {other}"))),
    }
}

fn json_rows(text: &str) -> Result<Vec<Vec<Scalar>>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Array(rows) = value else {
        return Err(Error::Parse("expected a JSON array of rows".into()));
    };
    rows.iter()
        .map(|row| match row {
            Value::Array(entries) => entries.iter().map(json_scalar).collect(),
            scalar => Ok(vec![json_scalar(scalar)?]),
        })
        .collect()
}

fn csv_rows(text: &str) -> Result<Vec<Vec<Scalar>>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| {
            let line = line.trim();
            !line.is_empty() && !line.starts_with('#')
        })
        .map(|(n, line)| {
            line.split(',')
                .map(|cell| {
                    cell.trim().parse::<f64>().map(|x| Scalar::new(x, 0.0)).map_err(|_| {
                        Error::Parse(format!("line {}: invalid number {:?}", n + 1, cell.trim()))
                    })
                })
                .collect()
        })
        .collect()
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('[')
}

fn rows_auto(text: &str) -> Result<Vec<Vec<Scalar>>> {
    if looks_like_json(text) {
        json_rows(text)
    } else {
        csv_rows(text)
    }
}

pub fn parse_kernel(text: &str) -> Result<Kernel> {
    Kernel::from_rows(rows_auto(text)?)
}

pub fn parse_scalar_function(text: &str) -> Result<ScalarFunction> {
    let rows = rows_auto(text)?;
    // a flat JSON array parses as single-entry rows; a single CSV line with
    // commas is also accepted as the whole function
    let values: Vec<Scalar> = if rows.len() == 1 {
        rows.into_iter().next().unwrap()
    } else if rows.iter().all(|r| r.len() == 1) {
        rows.into_iter().flatten().collect()
    } else {
        return Err(Error::Parse("scalar function must have one value per row".into()));
    };
    ScalarFunction::new(values)
}

pub fn parse_vvalued_function(text: &str) -> Result<VValuedFunction> {
    VValuedFunction::new(rows_auto(text)?.into_iter().map(Vector::new).collect())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_kernel(path: &Path) -> Result<Kernel> {
    parse_kernel(&read(path)?)
}

pub fn load_scalar_function(path: &Path) -> Result<ScalarFunction> {
    parse_scalar_function(&read(path)?)
}

pub fn load_vvalued_function(path: &Path) -> Result<VValuedFunction> {
    parse_vvalued_function(&read(path)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonExponent {
    Number(f64),
    Symbol(String),
}

/// Wire form of a [`NormSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSpecJson {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<JsonExponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
}

fn exponent(p: &Option<JsonExponent>) -> Result<f64> {
    match p {
        None => Err(Error::InvalidSpec("missing exponent \"p\"".into())),
        Some(JsonExponent::Number(p)) => Ok(*p),
        Some(JsonExponent::Symbol(s)) if matches!(s.as_str(), "inf" | "infinity" | "∞") => {
            Ok(f64::INFINITY)
        }
        Some(JsonExponent::Symbol(s)) => Err(Error::InvalidSpec(format!("invalid exponent {s:?}"))),
    }
}

impl NormSpecJson {
    pub fn into_spec(self) -> Result<NormSpec> {
        let field = self.field.unwrap_or(Field::Real);
        let check_dim = |found: usize| match self.dim {
            Some(dim) if dim != found => Err(Error::InvalidSpec(format!(
                "\"dim\" is {dim} but the data has dimension {found}"
            ))),
            _ => Ok(()),
        };
        match self.family.as_str() {
            "lp" => {
                let dim = self
                    .dim
                    .ok_or_else(|| Error::InvalidSpec("missing \"dim\"".into()))?;
                NormSpec::lp(exponent(&self.p)?, dim, field)
            }
            "wlp" => {
                let weights = self
                    .weights
                    .clone()
                    .ok_or_else(|| Error::InvalidSpec("missing \"weights\"".into()))?;
                check_dim(weights.len())?;
                NormSpec::weighted_lp(exponent(&self.p)?, weights, field)
            }
            "polytope" => {
                if field == Field::Complex {
                    return Err(Error::InvalidSpec("polytope norms are real only".into()));
                }
                let generators = self
                    .generators
                    .clone()
                    .ok_or_else(|| Error::InvalidSpec("missing \"generators\"".into()))?;
                let spec = NormSpec::polytope(generators)?;
                check_dim(spec.dim())?;
                Ok(spec)
            }
            other => Err(Error::InvalidSpec(format!(
                "unknown family {other:?}, expected \"lp\", \"wlp\", or \"polytope\""
            ))),
        }
    }
}

impl From<&NormSpec> for NormSpecJson {
    fn from(spec: &NormSpec) -> Self {
        let p = |e: &Exponent| {
            Some(match e {
                Exponent::Infinity => JsonExponent::Symbol("inf".into()),
                Exponent::Finite(p) => JsonExponent::Number(*p),
            })
        };
        let mut out = NormSpecJson {
            family: String::new(),
            p: None,
            dim: Some(spec.dim()),
            weights: None,
            generators: None,
            field: Some(spec.field()),
        };
        match spec.family() {
            Family::Lp { p: e } => {
                out.family = "lp".into();
                out.p = p(e);
            }
            Family::WeightedLp { p: e, weights } => {
                out.family = "wlp".into();
                out.p = p(e);
                out.weights = Some(weights.clone());
            }
            Family::Polytope { generators } => {
                out.family = "polytope".into();
                out.generators = Some(generators.clone());
            }
        }
        out
    }
}

pub fn parse_norm_spec(text: &str) -> Result<NormSpec> {
    let json: NormSpecJson = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    json.into_spec().map_err(|e| match e {
        Error::InvalidSpec(_) => e,
        other => Error::InvalidSpec(other.to_string()),
    })
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
pub fn norm_spec_arg(arg: &str) -> Result<NormSpec> {
    if arg.trim_start().starts_with('{') {
        parse_norm_spec(arg)
    } else {
        parse_norm_spec(&read(Path::new(arg))?)
    }
}

pub fn norm_spec_to_json(spec: &NormSpec) -> String {
    serde_json::to_string(&NormSpecJson::from(spec)).expect("norm spec serializes")
}
