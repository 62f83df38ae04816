//! The randomized verification suite and the kernel bounds report.
//!
//! Every run is a pure function of its configuration: instance `i` of every
//! section draws from its own ChaCha stream of the master seed, checks are
//! aggregated by name in sorted order, and no timestamp is recorded unless
//! the caller stamps the finished [`Report`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::check::{CheckRecord, Witness};
use crate::error::{Error, Result};
use crate::function_space::{self as fs, ScalarFunction, VValuedFunction};
use crate::io::NormSpecJson;
use crate::kernel::{self, Kernel};
use crate::norm::{self, Family, Field, Functional, NormSpec, Scalar, Vector};
use crate::pnorm::{self, BoundsReport, SearchOptions};
use crate::random;
use crate::rng;
use crate::sphere;
use crate::tol;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest `|E|` and `dim(V)` the suite accepts.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative slack on closed-form and exact paths.
    pub exact: f64,
    /// Relative slack on sampled and iterative paths.
    pub sampled: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: tol::EXACT,
            sampled: tol::SAMPLED,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub p_list: Vec<f64>,
    /// Dimensions of `V` and sizes of `E` to cycle through.
    pub dims: Vec<usize>,
    /// Extra norms checked alongside the built-in families.
    pub norms: Vec<NormSpec>,
    pub self_test: bool,
    pub tolerances: Tolerances,
    /// Random directions probed when checking that the dual norm is attained.
    pub directions: usize,
    /// Random points per dual-sphere sample.
    pub sphere_points: usize,
    /// Random `h` per kernel and exponent for the mixed-norm consequence.
    pub schur_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            trials: 100,
            p_list: vec![1.5, 2.0, 3.0],
            dims: vec![2, 3, 4],
            norms: Vec::new(),
            self_test: false,
            tolerances: Tolerances::default(),
            directions: 10_000,
            sphere_points: 16,
            schur_samples: 10,
        }
    }
}

fn validate_p_list(p_list: &[f64]) -> Result<()> {
    if p_list.is_empty() {
        return Err(Error::InvalidInput("p list must not be empty".into()));
    }
    for &p in p_list {
        pnorm::open_exponent(p)?;
    }
    Ok(())
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        validate_p_list(&self.p_list)?;
        if self.dims.is_empty() {
            return Err(Error::InvalidInput("dims must not be empty".into()));
        }
        if let Some(d) = self.dims.iter().find(|d| !(1..=MAX_DIM).contains(*d)) {
            return Err(Error::InvalidInput(format!("dims must lie in 1..={MAX_DIM}, found {d}")));
        }
        let t = self.tolerances;
        if !(t.exact > 0.0 && t.exact.is_finite() && t.sampled > 0.0 && t.sampled.is_finite()) {
            return Err(Error::InvalidInput("tolerances must be positive and finite".into()));
        }
        if self.sphere_points < 1 {
            return Err(Error::InvalidInput("sphere samples need at least one point".into()));
        }
        Ok(())
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "p_list": self.p_list,
            "dims": self.dims,
            "norms": self.norms.iter().map(NormSpecJson::from).collect::<Vec<_>>(),
            "self_test": self.self_test,
            "tolerances": self.tolerances,
            "directions": self.directions,
            "sphere_points": self.sphere_points,
            "schur_samples": self.schur_samples,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WorstInstance {
    pub instance: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// All instances of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub relation: String,
    pub instances: usize,
    pub failures: usize,
    /// For injected faults, whether the fault was detected.
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub injected: bool,
    /// The first failing instance, or the tightest one when none failed.
    pub worst: Option<WorstInstance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub instances: usize,
    pub failed_checks: usize,
    pub failed_instances: usize,
    pub injected_checks: usize,
    pub injected_detected: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub config: serde_json::Value,
    pub summary: Summary,
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundsReport>,
}

impl Report {
    /// Records the current Unix time in `generated_at`.
    pub fn stamp(&mut self) {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.generated_at = Some(now);
    }

    /// `0` when every check passed and every injected fault was detected,
    /// `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.pass {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dualkern {} {}", self.version, self.command);
        for b in &self.bounds {
            let _ = writeln!(
                out,
                "p={}  a={}  b={}  scalar_lower={}  Bp_lower={}  Bp_upper={}{}",
                b.p,
                b.a,
                b.b,
                b.scalar_lower,
                b.bp_lower,
                b.bp_upper,
                if b.converged { "" } else { "  (search not converged)" }
            );
        }
        for c in &self.checks {
            let status = match (c.pass, c.injected) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "DETECTED",
                (false, true) => "MISSED",
            };
            let _ = write!(
                out,
                "{status:8} {:40} {:>6} inst {:>5} fail  {}",
                c.name, c.instances, c.failures, c.relation
            );
            if let Some(w) = &c.worst {
                let _ = write!(out, "  [#{}: {:.12e} vs {:.12e}]", w.instance, w.lhs, w.rhs);
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} checks, {} instances, {} failed checks, {}/{} injected faults detected: {}",
            s.checks,
            s.instances,
            s.failed_checks,
            s.injected_detected,
            s.injected_checks,
            if s.pass { "PASS" } else { "FAIL" }
        );
        out
    }
}

struct Aggregate {
    relation: String,
    instances: usize,
    failures: usize,
    injected: bool,
    worst: Option<(usize, CheckRecord)>,
}

/// Collects check records by name.
#[derive(Default)]
pub struct Ledger {
    checks: BTreeMap<String, Aggregate>,
}

impl Ledger {
    pub fn push(&mut self, rec: CheckRecord) {
        self.add(rec, false);
    }

    /// Records a check whose inputs were deliberately corrupted; it passes
    /// in the summary when the corruption is detected.
    pub fn push_injected(&mut self, rec: CheckRecord) {
        self.add(rec, true);
    }

    fn add(&mut self, rec: CheckRecord, injected: bool) {
        let agg = self.checks.entry(rec.name.clone()).or_insert_with(|| Aggregate {
            relation: rec.relation.clone(),
            instances: 0,
            failures: 0,
            injected,
            worst: None,
        });
        let index = agg.instances;
        agg.instances += 1;
        if !rec.pass {
            agg.failures += 1;
        }
        let replace = match &agg.worst {
            None => true,
            Some((_, w)) => (w.pass && !rec.pass) || (w.pass && rec.pass && rec.excess() > w.excess()),
        };
        if replace {
            agg.worst = Some((index, rec));
        }
    }

    pub fn finish(self) -> (Vec<CheckSummary>, Summary) {
        let mut summary = Summary {
            checks: 0,
            instances: 0,
            failed_checks: 0,
            failed_instances: 0,
            injected_checks: 0,
            injected_detected: 0,
            pass: true,
        };
        let checks: Vec<CheckSummary> = self
            .checks
            .into_iter()
            .map(|(name, agg)| {
                let pass = if agg.injected {
                    agg.failures > 0
                } else {
                    agg.failures == 0
                };
                summary.checks += 1;
                summary.instances += agg.instances;
                if agg.injected {
                    summary.injected_checks += 1;
                    summary.injected_detected += usize::from(pass);
                } else {
                    summary.failed_instances += agg.failures;
                    summary.failed_checks += usize::from(!pass);
                }
                summary.pass &= pass;
                CheckSummary {
                    name,
                    relation: agg.relation,
                    instances: agg.instances,
                    failures: agg.failures,
                    pass,
                    injected: agg.injected,
                    worst: agg.worst.map(|(instance, r)| WorstInstance {
                        instance,
                        lhs: r.lhs,
                        rhs: r.rhs,
                        pass: r.pass,
                        witness: r.witness,
                    }),
                }
            })
            .collect();
        (checks, summary)
    }
}

/// Streams per suite section, so sections never share random sequences.
const NORMS: u64 = 1 << 32;
const FUNCTIONS: u64 = 2 << 32;
const KERNELS: u64 = 3 << 32;
const FAULTS: u64 = 4 << 32;

fn section_rng(seed: u64, section: u64, trial: usize) -> ChaCha8Rng {
    rng::seeded(seed, section + trial as u64)
}

fn leq(name: &str, relation: &str, lhs: f64, rhs: f64, rel: f64) -> CheckRecord {
    CheckRecord::leq(name, relation, lhs, rhs, rel)
}

fn rel_eq(name: &str, relation: &str, lhs: f64, rhs: f64, rel: f64) -> CheckRecord {
    CheckRecord::within(name, relation, lhs, rhs, rel * lhs.abs().max(rhs.abs()))
}

fn check_norm_space(ledger: &mut Ledger, cfg: &SuiteConfig, spec: &NormSpec, rng: &mut ChaCha8Rng) -> Result<()> {
    let exact = cfg.tolerances.exact;
    let v = random::vector(rng, spec);
    let w = random::vector(rng, spec);
    let alpha = spec.random_scalar(rng);
    let nv = norm::norm_eval(spec, &v)?;
    let nw = norm::norm_eval(spec, &w)?;
    let scaled = norm::norm_eval(spec, &v.scale(alpha))?;

    ledger.push(CheckRecord::within(
        "norm.zero",
        "‖0‖ = 0",
        norm::norm_eval(spec, &Vector::zeros(spec.dim()))?,
        0.0,
        1e-12,
    ));
    if !v.is_zero() {
        ledger.push(CheckRecord::lt("norm.definite", "0 < ‖v‖ for v ≠ 0", 0.0, nv).with_witness(&v));
    }
    ledger.push(
        rel_eq("norm.homogeneity", "‖αv‖ = |α|‖v‖", scaled, alpha.norm() * nv, exact).with_witness(&v),
    );
    ledger.push(
        leq("norm.triangle", "‖v+w‖ ≤ ‖v‖+‖w‖", norm::norm_eval(spec, &v.add(&w))?, nv + nw, exact)
            .with_witness(&v),
    );

    // dual norm
    let lam = spec.random_functional(rng);
    let dual = norm::dual_norm_eval(spec, &lam)?;
    let pairing = lam.apply(&v)?.norm();
    ledger.push(
        leq("dual.pairing", "|λ(v)| ≤ ‖λ‖_{V*}‖v‖", pairing, dual * nv, exact).with_witness(&v),
    );
    let bound_seed = rng.gen();
    let at_dual = norm::bound_constant_check(spec, &lam, dual, 16, bound_seed)?;
    let mut rec = leq("dual.bound_constant", "|λ(v)| ≤ k‖v‖ for k = ‖λ‖_{V*}", at_dual.worst_ratio, dual, exact);
    rec.pass = at_dual.holds;
    ledger.push(rec);
    if dual > 0.0 {
        let below = norm::bound_constant_check(spec, &lam, dual * (1.0 - cfg.tolerances.sampled), 16, bound_seed)?;
        let mut rec = CheckRecord::lt(
            "dual.minimality",
            "no k < ‖λ‖_{V*} bounds |λ(v)|/‖v‖",
            dual * (1.0 - cfg.tolerances.sampled),
            below.worst_ratio,
        );
        rec.pass = !below.holds;
        if let Some(wit) = &below.witness {
            rec = rec.with_witness(wit);
        }
        ledger.push(rec);
    }
    if let Some(dual_spec) = spec.dual() {
        // sup of |λ(u)|/‖u‖ over the maximizing direction and random directions
        let mut sup = 0.0f64;
        if let Some(u) = norm::maximizing_vector(spec, &lam)? {
            sup = sup.max(lam.apply(&u)?.norm() / norm::norm_eval(spec, &u)?);
        }
        for _ in 0..cfg.directions {
            let u = spec.random_vector(rng);
            let nu = norm::norm_eval(spec, &u)?;
            if nu > 0.0 {
                sup = sup.max(lam.apply(&u)?.norm() / nu);
            }
        }
        ledger.push(rel_eq(
            "dual.attained",
            "sup |λ(u)|/‖u‖ over probes = ‖λ‖_{V*}",
            sup,
            dual,
            cfg.tolerances.sampled,
        ));
        let bidual = dual_spec.dual().expect("Lp families are closed under duality");
        ledger.push(
            CheckRecord::within(
                "dual.biduality",
                "‖v‖ under the dual of the dual = ‖v‖",
                norm::norm_eval(&bidual, &v)?,
                nv,
                exact * nv.max(1.0),
            )
            .with_witness(&v),
        );
    }

    // norming functional and recovery by duality
    if !v.is_zero() {
        let lam_v = norm::norming_functional(spec, &v)?;
        let value = lam_v.apply(&v)?;
        let slack = exact * nv.max(1.0);
        ledger.push(CheckRecord::within(
            "norming.dual_norm",
            "‖λ_v‖_{V*} = 1",
            norm::dual_norm_eval(spec, &lam_v)?,
            1.0,
            exact,
        ));
        ledger.push(
            CheckRecord::within("norming.attains", "Re λ_v(v) = ‖v‖", value.re, nv, slack).with_witness(&v),
        );
        ledger.push(CheckRecord::within("norming.real", "Im λ_v(v) = 0", value.im, 0.0, slack).with_witness(&v));
    }
    ledger.push(
        CheckRecord::within(
            "duality.recovery",
            "max{|λ(v)| : ‖λ‖_{V*} ≤ 1} = ‖v‖",
            norm::recover_norm_by_duality(spec, &v)?,
            nv,
            exact * nv.max(1.0),
        )
        .with_witness(&v),
    );

    // embedding into sup-normed functions on the dual sphere
    let sample_seed: u64 = rng.gen();
    let check = sphere::isometry_check(spec, &v, cfg.sphere_points, sample_seed)?;
    ledger.push(
        CheckRecord::within("embedding.isometry", "sup |φ_v| = ‖v‖ (anchored)", check.lower, check.norm, exact * check.norm)
            .with_witness(&v),
    );
    let free = sphere::sphere_sample(spec, cfg.sphere_points, sample_seed ^ 1, &[])?;
    let phi_v = sphere::embed(&v, &free)?;
    let phi_w = sphere::embed(&w, &free)?;
    let sup_v = sphere::sup_norm(&phi_v)?;
    ledger.push(leq("embedding.sup_le_norm", "sup |φ_v| ≤ ‖v‖ (unanchored)", sup_v, nv, exact).with_witness(&v));
    let combined = sphere::embed(&v.scale(alpha).add(&w), &free)?;
    let expected = phi_v.scale(alpha).add(&phi_w)?;
    let gap = combined
        .values()
        .iter()
        .zip(expected.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let scale = (alpha.norm() * sup_v + sphere::sup_norm(&phi_w)?).max(1.0);
    ledger.push(CheckRecord::within("embedding.linear", "φ_{αv+w} = αφ_v + φ_w", gap, 0.0, 1e-12 * scale));
    Ok(())
}

fn record_norm_axioms(
    ledger: &mut Ledger,
    exact: f64,
    label: &str,
    norm: &dyn Fn(&Candidate) -> Result<f64>,
    f: Candidate,
    g: Candidate,
    alpha: Scalar,
) -> Result<()> {
    let (nf, ng) = (norm(&f)?, norm(&g)?);
    let sum = norm(&f.add(&g)?)?;
    let scaled = norm(&f.scale(alpha))?;
    ledger.push(leq(
        &format!("function.triangle.{label}"),
        "‖f+g‖ ≤ ‖f‖+‖g‖",
        sum,
        nf + ng,
        exact,
    ));
    ledger.push(rel_eq(
        &format!("function.homogeneity.{label}"),
        "‖αf‖ = |α|‖f‖",
        scaled,
        alpha.norm() * nf,
        exact,
    ));
    Ok(())
}

/// A scalar or `V`-valued function, for checking the norm axioms uniformly.
#[derive(Clone)]
enum Candidate {
    Scalar(ScalarFunction),
    Vector(VValuedFunction),
}

impl Candidate {
    fn add(&self, other: &Candidate) -> Result<Candidate> {
        match (self, other) {
            (Candidate::Scalar(a), Candidate::Scalar(b)) => Ok(Candidate::Scalar(a.add(b)?)),
            (Candidate::Vector(a), Candidate::Vector(b)) => Ok(Candidate::Vector(a.add(b)?)),
            _ => Err(Error::InvalidInput("mixed function kinds".into())),
        }
    }

    fn scale(&self, alpha: Scalar) -> Candidate {
        match self {
            Candidate::Scalar(a) => Candidate::Scalar(a.scale(alpha)),
            Candidate::Vector(a) => Candidate::Vector(a.scale(alpha)),
        }
    }

    fn scalar(&self) -> &ScalarFunction {
        match self {
            Candidate::Scalar(f) => f,
            Candidate::Vector(_) => unreachable!("scalar norm on a vector-valued function"),
        }
    }

    fn vector(&self) -> &VValuedFunction {
        match self {
            Candidate::Vector(f) => f,
            Candidate::Scalar(_) => unreachable!("vector norm on a scalar function"),
        }
    }
}

/// The norms on `V` used for vector-valued checks, rotated by trial.
/// Polytope norms are real, so complex trials use a weighted norm instead.
fn value_space(rng: &mut ChaCha8Rng, which: usize, dim: usize, field: Field) -> Result<NormSpec> {
    match which % 4 {
        0 => NormSpec::lp(1.0, dim, field),
        1 => NormSpec::lp(2.0, dim, field),
        2 => NormSpec::lp(f64::INFINITY, dim, field),
        _ if field == Field::Real => Ok(random::polytope(rng, dim)),
        _ => NormSpec::weighted_lp(3.0, random::weights(rng, dim), field),
    }
}

fn check_function_space(ledger: &mut Ledger, cfg: &SuiteConfig, trial: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let exact = cfg.tolerances.exact;
    let field = if trial.is_multiple_of(2) { Field::Real } else { Field::Complex };
    let alpha = NormSpec::lp(2.0, 1, field)?.random_scalar(rng);
    let f = random::scalar_function(rng, n, field);
    let g = random::scalar_function(rng, n, field);

    let sc = |x: &ScalarFunction| Candidate::Scalar(x.clone());
    record_norm_axioms(ledger, exact, "inf", &|c| Ok(fs::norm_inf(c.scalar())), sc(&f), sc(&g), alpha)?;
    record_norm_axioms(ledger, exact, "1", &|c| Ok(fs::norm_1(c.scalar())), sc(&f), sc(&g), alpha)?;
    for &p in &cfg.p_list {
        record_norm_axioms(ledger, exact, "p", &|c| fs::norm_p(c.scalar(), p), sc(&f), sc(&g), alpha)?;
        let (ni, np, n1) = (fs::norm_inf(&f), fs::norm_p(&f, p)?, fs::norm_1(&f));
        ledger.push(leq("function.monotone.inf_le_p", "‖f‖_∞ ≤ ‖f‖_p", ni, np, 1e-12).with_witness(&f));
        ledger.push(leq("function.monotone.p_le_1", "‖f‖_p ≤ ‖f‖_1", np, n1, 1e-12).with_witness(&f));
    }

    let dim = cfg.dims[trial % cfg.dims.len()];
    let v = value_space(rng, trial, dim, field)?;
    let vf = Candidate::Vector(random::vvalued_function(rng, n, &v));
    let vg = Candidate::Vector(random::vvalued_function(rng, n, &v));
    record_norm_axioms(ledger, exact, "inf_v", &|c| fs::norm_inf_v(c.vector(), &v), vf.clone(), vg.clone(), alpha)?;
    record_norm_axioms(ledger, exact, "1_v", &|c| fs::norm_1_v(c.vector(), &v), vf.clone(), vg.clone(), alpha)?;
    for &p in &cfg.p_list {
        record_norm_axioms(ledger, exact, "p_v", &|c| fs::norm_p_v(c.vector(), &v, p), vf.clone(), vg.clone(), alpha)?;
    }

    // diagonal lift and the two routes to the mixed norm
    let ell1 = fs::ell1_space(n, field)?;
    let lift = fs::diag_embed(&f);
    let mut exponents = vec![1.0];
    exponents.extend_from_slice(&cfg.p_list);
    for p in exponents {
        let scalar = if p == 1.0 { fs::norm_1(&f) } else { fs::norm_p(&f, p)? };
        ledger.push(
            rel_eq("function.diag_isometry", "‖H‖_{p,V} = ‖h‖_p", fs::norm_p_v(&lift, &ell1, p)?, scalar, 1e-12)
                .with_witness(&f),
        );
        let matrix = random::vvalued_function(rng, n, &ell1);
        ledger.push(
            rel_eq(
                "function.mixed_two_routes",
                "‖f‖_{p,V} = (Σ_x(Σ_z|f(x,z)|)^p)^(1/p)",
                fs::norm_p_v(&matrix, &ell1, p)?,
                fs::mixed_norm(&matrix, p)?,
                1e-12,
            )
            .with_witness(&matrix),
        );
    }
    Ok(())
}

/// `max_s ‖T s‖_∞` over all sign vectors `s ∈ {-1, 1}^E`.
pub fn brute_force_inf_norm(t: &Kernel) -> f64 {
    let n = t.size();
    let mut best = 0.0f64;
    for mask in 0u64..(1 << n) {
        let s: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let f = ScalarFunction::from_real(&s).expect("nonempty");
        let tf = kernel::apply_scalar(t, &f).expect("sizes match");
        best = best.max(fs::norm_inf(&tf));
    }
    best
}

/// `max_y ‖T e_y‖_1` over the basis functions.
pub fn brute_force_one_norm(t: &Kernel) -> f64 {
    let n = t.size();
    (0..n)
        .map(|y| {
            let e: Vec<f64> = (0..n).map(|i| if i == y { 1.0 } else { 0.0 }).collect();
            let f = ScalarFunction::from_real(&e).expect("nonempty");
            fs::norm_1(&kernel::apply_scalar(t, &f).expect("sizes match"))
        })
        .fold(0.0, f64::max)
}

/// The function on `E` attaining `‖Tf‖_∞ = a‖f‖_∞`: unit-modulus phases
/// aligned with the largest row.
pub fn extremal_inf_function(t: &Kernel) -> ScalarFunction {
    let n = t.size();
    let row = (0..n)
        .map(|x| (x, t.row(x).iter().map(|z| z.norm()).sum::<f64>()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
        .0;
    let values = t
        .row(row)
        .iter()
        .map(|z| {
            if z.norm() == 0.0 {
                Scalar::new(1.0, 0.0)
            } else {
                z.conj() / z.norm()
            }
        })
        .collect();
    ScalarFunction::new(values).expect("nonempty")
}

fn rejudge(mut rec: CheckRecord, rel: f64) -> CheckRecord {
    rec.pass = tol::leq(rec.lhs, rec.rhs, rel);
    rec
}

fn check_kernels(ledger: &mut Ledger, cfg: &SuiteConfig, trial: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let exact = cfg.tolerances.exact;
    let field = if trial % 4 == 3 { Field::Complex } else { Field::Real };
    let t = random::kernel(rng, n, field);
    let (a, b) = (kernel::bound_inf(&t), kernel::bound_one(&t));

    if t.is_real() {
        ledger.push(CheckRecord::within(
            "kernel.a_exact",
            "max over sign vectors of ‖Ts‖_∞ = a",
            brute_force_inf_norm(&t),
            a,
            1e-12 * a.max(1.0),
        ));
    }
    ledger.push(CheckRecord::within(
        "kernel.b_exact",
        "max over basis functions of ‖Te_y‖_1 = b",
        brute_force_one_norm(&t),
        b,
        1e-12 * b.max(1.0),
    ));

    let dim = cfg.dims[trial % cfg.dims.len()];
    let v = value_space(rng, trial + n, dim, field)?;
    let f = random::scalar_function(rng, n, field);
    let fv = random::vvalued_function(rng, n, &v);
    for rec in kernel::check_inf_bounds(&t, &f, &fv, &v)? {
        ledger.push(rejudge(rec, exact));
    }
    for rec in kernel::check_one_bounds(&t, &f, &fv, &v)? {
        ledger.push(rejudge(rec, exact));
    }
    let tight = extremal_inf_function(&t);
    let [tight_rec, _] = kernel::check_inf_bounds(&t, &tight, &fv, &v)?;
    ledger.push(rejudge(tight_rec, exact));

    let lift = fs::diag_embed(&f);
    let image = kernel::apply_vector(&t, &lift)?;
    let mut gap = 0.0f64;
    for x in 0..n {
        for z in 0..n {
            gap = gap.max((image.at(x, z) - t.get(x, z) * f.values()[z]).norm());
        }
    }
    ledger.push(CheckRecord::within("kernel.diag_commute", "T_V(H)(x,z) = t(x,z)h(z)", gap, 0.0, 0.0).with_witness(&f));

    let opts = SearchOptions::default();
    for &p in &cfg.p_list {
        let seed = rng.gen();
        let report = pnorm::bounds_report(&t, p, seed, cfg.schur_samples, &opts)?;
        for rec in report.checks {
            ledger.push(rec);
        }
    }
    Ok(())
}

fn inject_faults(ledger: &mut Ledger, cfg: &SuiteConfig, i: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = cfg.dims[i % cfg.dims.len()];
    let p = cfg.p_list[i % cfg.p_list.len()];
    let t = random::kernel(rng, n, Field::Real);
    let l2 = NormSpec::lp(2.0, n, Field::Real)?;

    let f = extremal_inf_function(&t);
    let fv = random::vvalued_function(rng, n, &l2);
    let [mut rec, _] = kernel::check_inf_bounds_with(&t, kernel::bound_inf(&t) - 0.1, &f, &fv, &l2)?;
    rec.name = "fault.inf_bound.scalar".into();
    rec.relation = "‖Tf‖_∞ ≤ (a − 0.1)‖f‖_∞".into();
    ledger.push_injected(rec);

    let witness = pnorm::p_norm_scalar_lower(&t, p, rng.gen(), 200)?.witness;
    let observed = pnorm::schur_lhs(&t, p, &witness)? / fs::norm_p(&witness, p)?;
    let mut rec = pnorm::check_schur_consequence(&t, p, observed * (1.0 - 1e-3) - 1e-3, &witness)?;
    rec.name = "fault.schur_consequence".into();
    rec.relation = "mixed-norm consequence with B_p below the observed ratio".into();
    ledger.push_injected(rec);

    let spec = random::polytope(rng, n);
    let lam: Functional = spec.random_functional(rng);
    let dual = norm::dual_norm_eval(&spec, &lam)?;
    let k = 0.9 * dual;
    let bc = norm::bound_constant_check(&spec, &lam, k, 16, rng.gen())?;
    let mut rec = CheckRecord::leq("fault.dual_norm", "|λ(v)| ≤ 0.9‖λ‖_{V*}‖v‖", bc.worst_ratio, k, 0.0);
    rec.pass = bc.holds;
    if let Some(w) = &bc.witness {
        rec = rec.with_witness(w);
    }
    ledger.push_injected(rec);
    Ok(())
}

/// Runs every check of the library on seeded random instances.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut ledger = Ledger::default();
    for trial in 0..cfg.trials {
        let mut rng = section_rng(cfg.seed, NORMS, trial);
        for (k, &dim) in cfg.dims.iter().enumerate() {
            for spec in random::family_specs(&mut rng, dim, &cfg.p_list, trial + k)? {
                check_norm_space(&mut ledger, cfg, &spec, &mut rng)?;
            }
        }
        for spec in &cfg.norms {
            check_norm_space(&mut ledger, cfg, spec, &mut rng)?;
        }

        let mut rng = section_rng(cfg.seed, FUNCTIONS, trial);
        for &n in &cfg.dims {
            check_function_space(&mut ledger, cfg, trial, n, &mut rng)?;
        }

        let mut rng = section_rng(cfg.seed, KERNELS, trial);
        for &n in &cfg.dims {
            check_kernels(&mut ledger, cfg, trial, n, &mut rng)?;
        }
    }
    if cfg.self_test {
        for i in 0..cfg.trials.min(10) {
            let mut rng = section_rng(cfg.seed, FAULTS, i);
            inject_faults(&mut ledger, cfg, i, &mut rng)?;
        }
    }
    let (checks, summary) = ledger.finish();
    Ok(Report {
        tool: "dualkern",
        version: VERSION,
        command: "suite",
        generated_at: None,
        config: cfg.echo(),
        summary,
        checks,
        bounds: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsConfig {
    pub seed: u64,
    pub p_list: Vec<f64>,
    /// Random `h` for the mixed-norm consequence, per exponent.
    pub trials: usize,
    pub search: SearchOptions,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            seed: 1,
            p_list: vec![2.0],
            trials: 100,
            search: SearchOptions::default(),
        }
    }
}

/// Largest kernel for which the sign-vector brute force is run.
const BRUTE_FORCE_MAX: usize = 16;

/// `a`, `b`, and the `B_p` bracket for one kernel at every exponent.
pub fn run_bounds(t: &Kernel, cfg: &BoundsConfig) -> Result<Report> {
    validate_p_list(&cfg.p_list)?;
    let mut ledger = Ledger::default();
    let (a, b) = (kernel::bound_inf(t), kernel::bound_one(t));
    if t.is_real() && t.size() <= BRUTE_FORCE_MAX {
        ledger.push(CheckRecord::within(
            "kernel.a_exact",
            "max over sign vectors of ‖Ts‖_∞ = a",
            brute_force_inf_norm(t),
            a,
            1e-12 * a.max(1.0),
        ));
    }
    ledger.push(CheckRecord::within(
        "kernel.b_exact",
        "max over basis functions of ‖Te_y‖_1 = b",
        brute_force_one_norm(t),
        b,
        1e-12 * b.max(1.0),
    ));
    let mut bounds = Vec::with_capacity(cfg.p_list.len());
    for (i, &p) in cfg.p_list.iter().enumerate() {
        let mut report = pnorm::bounds_report(t, p, cfg.seed.wrapping_add(i as u64), cfg.trials, &cfg.search)?;
        for rec in std::mem::take(&mut report.checks) {
            ledger.push(rec);
        }
        bounds.push(report);
    }
    let (checks, summary) = ledger.finish();
    Ok(Report {
        tool: "dualkern",
        version: VERSION,
        command: "bounds",
        generated_at: None,
        config: json!({
            "seed": cfg.seed,
            "p_list": cfg.p_list,
            "trials": cfg.trials,
            "kernel_size": t.size(),
            "kernel_field": if t.is_real() { "real" } else { "complex" },
        }),
        summary,
        checks,
        bounds,
    })
}

/// Family name used in reports.
pub fn family_name(spec: &NormSpec) -> &'static str {
    match spec.family() {
        Family::Lp { .. } => "lp",
        Family::WeightedLp { .. } => "wlp",
        Family::Polytope { .. } => "polytope",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig {
            trials: 2,
            directions: 100,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn ledger_keeps_failing_then_tightest_instance() {
        let mut ledger = Ledger::default();
        ledger.push(CheckRecord::leq("x", "l ≤ r", 1.0, 2.0, 0.0));
        ledger.push(CheckRecord::leq("x", "l ≤ r", 1.9, 2.0, 0.0));
        ledger.push(CheckRecord::leq("x", "l ≤ r", 3.0, 2.0, 0.0));
        ledger.push(CheckRecord::leq("x", "l ≤ r", 5.0, 2.0, 0.0));
        ledger.push(CheckRecord::leq("a", "l ≤ r", 0.0, 1.0, 0.0));
        let (checks, summary) = ledger.finish();
        assert_eq!(checks[0].name, "a");
        let x = &checks[1];
        assert_eq!((x.instances, x.failures, x.pass), (4, 2, false));
        assert_eq!(x.worst.as_ref().unwrap().instance, 2);
        assert_eq!(summary.instances, 5);
        assert_eq!(summary.failed_checks, 1);
        assert!(!summary.pass);
    }

    #[test]
    fn injected_faults_pass_only_when_detected() {
        let mut ledger = Ledger::default();
        ledger.push_injected(CheckRecord::leq("fault", "l ≤ r", 1.0, 2.0, 0.0));
        let (_, summary) = ledger.finish();
        assert_eq!(summary.injected_detected, 0);
        assert!(!summary.pass);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad = [
            SuiteConfig { trials: 0, ..quick() },
            SuiteConfig { p_list: vec![], ..quick() },
            SuiteConfig { p_list: vec![1.0], ..quick() },
            SuiteConfig { p_list: vec![f64::INFINITY], ..quick() },
            SuiteConfig { dims: vec![], ..quick() },
            SuiteConfig { dims: vec![MAX_DIM + 1], ..quick() },
            SuiteConfig {
                tolerances: Tolerances { exact: 0.0, sampled: 1e-6 },
                ..quick()
            },
        ];
        for cfg in bad {
            assert!(run_suite(&cfg).is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn suite_is_deterministic_and_detects_faults() {
        let cfg = SuiteConfig { self_test: true, ..quick() };
        let first = run_suite(&cfg).unwrap();
        assert_eq!(first.to_json(), run_suite(&cfg).unwrap().to_json());
        assert_eq!(first.exit_code(), 0, "{}", first.to_text());
        let fault = first.check("fault.inf_bound.scalar").unwrap();
        assert!(fault.injected && fault.pass);
        assert!(fault.worst.as_ref().unwrap().witness.is_some());
        let other = run_suite(&SuiteConfig { seed: 2, ..cfg }).unwrap();
        assert_ne!(first.to_json(), other.to_json());
    }

    #[test]
    fn bounds_examples() {
        let t = Kernel::from_real_rows(&[vec![1.0, -2.0], vec![3.0, 4.0]]).unwrap();
        let report = run_bounds(&t, &BoundsConfig::default()).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert_eq!((report.bounds[0].a, report.bounds[0].b), (7.0, 6.0));
        assert!(run_bounds(&t, &BoundsConfig { p_list: vec![0.5], ..BoundsConfig::default() }).is_err());
    }
}
