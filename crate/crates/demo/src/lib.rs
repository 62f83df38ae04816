//! Browser demo: unit balls and norming functionals of planar norms, the
//! operator-norm bracket of a kernel as `p` varies, and the dual-sphere
//! embedding of a vector.
//!
//! Each export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and run natively, so they are what
//! the tests exercise.

use dualkern::io::{parse_kernel, parse_norm_spec};
use dualkern::norm::{self, Field, Functional, NormSpec, Vector};
use dualkern::pnorm;
use dualkern::sphere;
use serde_json::json;
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn planar(spec_json: &str) -> Result<NormSpec, String> {
    let spec = parse_norm_spec(spec_json).map_err(|e| e.to_string())?;
    if spec.dim() != 2 || spec.field() != Field::Real {
        return Err("the demo draws real two-dimensional norms only".into());
    }
    Ok(spec)
}

/// Boundary points of the primal and dual unit balls, plus the norming
/// functional and its dual norm at `(x, y)`.
pub fn unit_balls_json(spec_json: &str, samples: usize, x: f64, y: f64) -> Out {
    let spec = planar(spec_json)?;
    let samples = samples.clamp(8, 4096);
    let mut primal = Vec::with_capacity(samples);
    let mut dual = Vec::with_capacity(samples);
    for i in 0..samples {
        let theta = std::f64::consts::TAU * i as f64 / samples as f64;
        let (c, s) = (theta.cos(), theta.sin());
        let n = norm::norm_eval(&spec, &Vector::from_real(&[c, s])).map_err(|e| e.to_string())?;
        let d = norm::dual_norm_eval(&spec, &Functional::from_real(&[c, s])).map_err(|e| e.to_string())?;
        primal.push([c / n, s / n]);
        dual.push([c / d, s / d]);
    }
    let v = Vector::from_real(&[x, y]);
    let value = norm::norm_eval(&spec, &v).map_err(|e| e.to_string())?;
    let functional = if v.is_zero() {
        None
    } else {
        let lam = norm::norming_functional(&spec, &v).map_err(|e| e.to_string())?;
        Some(json!({
            "coords": lam.coords().iter().map(|z| z.re).collect::<Vec<_>>(),
            "dual_norm": norm::dual_norm_eval(&spec, &lam).map_err(|e| e.to_string())?,
            "value": lam.apply(&v).map_err(|e| e.to_string())?.re,
        }))
    };
    Ok(json!({
        "label": spec.label(),
        "primal": primal,
        "dual": dual,
        "point": [x, y],
        "norm": value,
        "norming": functional,
    })
    .to_string())
}

/// `a`, `b`, and the lower and upper bounds for the `p → p` norm at `steps`
/// exponents spread over `[p_min, p_max]`.
pub fn kernel_bounds_json(kernel_text: &str, p_min: f64, p_max: f64, steps: usize, seed: u64) -> Out {
    let t = parse_kernel(kernel_text).map_err(|e| e.to_string())?;
    if t.size() > 12 {
        return Err("kernels up to 12×12 keep the page responsive".into());
    }
    if !(p_min > 1.0 && p_max >= p_min && p_max.is_finite()) {
        return Err("need 1 < p_min ≤ p_max < ∞".into());
    }
    let steps = steps.clamp(1, 100);
    let mut curve = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = if steps == 1 {
            p_min
        } else {
            p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64
        };
        let scalar = pnorm::p_norm_scalar_lower(&t, p, seed, 200).map_err(|e| e.to_string())?;
        let vector = pnorm::vector_p_lower(&t, p, seed, 200).map_err(|e| e.to_string())?;
        let upper = pnorm::p_norm_upper(&t, p).map_err(|e| e.to_string())?;
        curve.push(json!({
            "p": p,
            "scalar_lower": scalar.value,
            "Bp_lower": vector.value,
            "Bp_upper": upper,
            "converged": scalar.converged,
        }));
    }
    Ok(json!({
        "size": t.size(),
        "a": dualkern::kernel::bound_inf(&t),
        "b": dualkern::kernel::bound_one(&t),
        "curve": curve,
    })
    .to_string())
}

/// `|φ_v(λ)|` at each sampled dual-sphere point, with `sup |φ_v|` and `‖v‖`.
pub fn isometry_json(spec_json: &str, x: f64, y: f64, points: usize, seed: u64, anchored: bool) -> Out {
    let spec = planar(spec_json)?;
    let v = Vector::from_real(&[x, y]);
    // anchoring adds the norming functional of v to the sample
    let anchors = if anchored && !v.is_zero() {
        vec![v.clone()]
    } else {
        Vec::new()
    };
    let sample = sphere::sphere_sample(&spec, points.clamp(1, 2000), seed, &anchors).map_err(|e| e.to_string())?;
    let phi = sphere::embed(&v, &sample).map_err(|e| e.to_string())?;
    Ok(json!({
        "norm": norm::norm_eval(&spec, &v).map_err(|e| e.to_string())?,
        "sup": sphere::sup_norm(&phi).map_err(|e| e.to_string())?,
        "points": sample.points().iter().map(|p| [p.coords()[0].re, p.coords()[1].re]).collect::<Vec<_>>(),
        "values": phi.values().iter().map(|z| z.norm()).collect::<Vec<_>>(),
    })
    .to_string())
}

fn js(out: Out) -> Result<String, JsValue> {
    out.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn unit_balls(spec_json: &str, samples: usize, x: f64, y: f64) -> Result<String, JsValue> {
    js(unit_balls_json(spec_json, samples, x, y))
}

#[wasm_bindgen]
pub fn kernel_bounds(kernel_text: &str, p_min: f64, p_max: f64, steps: usize, seed: u32) -> Result<String, JsValue> {
    js(kernel_bounds_json(kernel_text, p_min, p_max, steps, u64::from(seed)))
}

#[wasm_bindgen]
pub fn isometry(spec_json: &str, x: f64, y: f64, points: usize, seed: u32, anchored: bool) -> Result<String, JsValue> {
    js(isometry_json(spec_json, x, y, points, u64::from(seed), anchored))
}
