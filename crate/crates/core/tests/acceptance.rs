//! Acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::{Command, ExitCode};

use dualkern::function_space::{self as fs, ScalarFunction};
use dualkern::kernel::{self, Kernel};
use dualkern::norm::{self, Field, Functional, NormSpec, Scalar};
use dualkern::pnorm;
use dualkern::random;
use dualkern::rng::{self, gaussian_scalars};
use dualkern::sphere;
use dualkern::tol;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn count(failures: usize, total: usize) -> Outcome {
    if failures == 0 {
        Ok(format!("{total} instances"))
    } else {
        Err(format!("{failures} of {total} instances failed"))
    }
}

fn family_spec(r: &mut ChaCha8Rng, family: usize) -> NormSpec {
    let dim = r.gen_range(1..=6);
    let p = [1.0, 1.5, 2.0, 3.0, f64::INFINITY, r.gen_range(1.0..6.0)][r.gen_range(0..6)];
    let field = if r.gen_bool(0.5) { Field::Real } else { Field::Complex };
    match family {
        0 => NormSpec::lp(p, dim, field).unwrap(),
        1 => NormSpec::weighted_lp(p, random::weights(r, dim), field).unwrap(),
        _ => random::polytope(r, dim),
    }
}

fn norm_axioms() -> Outcome {
    let mut r = rng::seeded(1, 1);
    let (mut fails, total) = (0, 10_000);
    for i in 0..total {
        let spec = family_spec(&mut r, i % 3);
        let v = random::vector(&mut r, &spec);
        let w = random::vector(&mut r, &spec);
        let alpha = spec.random_scalar(&mut r);
        let nv = norm::norm_eval(&spec, &v).unwrap();
        let nw = norm::norm_eval(&spec, &w).unwrap();
        let triangle = tol::leq(norm::norm_eval(&spec, &v.add(&w)).unwrap(), nv + nw, 1e-9);
        let scaled = norm::norm_eval(&spec, &v.scale(alpha)).unwrap();
        let expected = alpha.norm() * nv;
        let homogeneous = (scaled - expected).abs() <= 1e-9 * scaled.max(expected);
        fails += usize::from(!(triangle && homogeneous));
    }
    count(fails, total)
}

fn conjugate_norm(lam: &[Scalar], q: f64) -> f64 {
    if q.is_infinite() {
        lam.iter().map(|z| z.norm()).fold(0.0, f64::max)
    } else {
        lam.iter().map(|z| z.norm().powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// `max λ·v` over the unit ball of `max(|x|, |y|, |x+y|)`, searching angles
/// on the boundary with two rounds of local refinement.
fn hexagon_by_search(lam: [f64; 2]) -> f64 {
    let value = |theta: f64| {
        let (x, y) = (theta.cos(), theta.sin());
        (lam[0] * x + lam[1] * y) / x.abs().max(y.abs()).max((x + y).abs())
    };
    let (mut center, mut width, mut best) = (0.0, std::f64::consts::TAU, f64::NEG_INFINITY);
    for _ in 0..3 {
        let steps = 20_000;
        let start = center - width / 2.0;
        for i in 0..=steps {
            let theta = start + width * i as f64 / steps as f64;
            if value(theta) > best {
                best = value(theta);
                center = theta;
            }
        }
        width *= 4.0 / steps as f64;
    }
    best
}

fn dual_closed_forms() -> Outcome {
    let mut r = rng::seeded(1, 2);
    let (mut fails, mut total) = (0, 0);
    for &(p, q) in &[(1.0, f64::INFINITY), (1.5, 3.0), (2.0, 2.0), (3.0, 1.5), (f64::INFINITY, 1.0)] {
        for dim in 2..=6 {
            for field in [Field::Real, Field::Complex] {
                let spec = NormSpec::lp(p, dim, field).unwrap();
                for _ in 0..50 {
                    let lam = spec.random_functional(&mut r);
                    let got = norm::dual_norm_eval(&spec, &lam).unwrap();
                    let want = conjugate_norm(lam.coords(), q);
                    fails += usize::from((got - want).abs() > 1e-9 * want.max(1.0));
                    total += 1;
                }
            }
        }
    }
    let hexagon = NormSpec::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
    for _ in 0..200 {
        let lam = [r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)];
        let got = norm::dual_norm_eval(&hexagon, &Functional::from_real(&lam)).unwrap();
        let want = hexagon_by_search(lam);
        fails += usize::from((got - want).abs() > 1e-6 * want.max(1.0));
        total += 1;
    }
    count(fails, total)
}

fn norming_functionals() -> Outcome {
    let mut r = rng::seeded(1, 3);
    let (mut fails, mut total) = (0, 0);
    for family in 0..3 {
        let mut done = 0;
        while done < 1_000 {
            let spec = family_spec(&mut r, family);
            let v = random::vector(&mut r, &spec);
            if v.is_zero() {
                continue;
            }
            let nv = norm::norm_eval(&spec, &v).unwrap();
            let lam = norm::norming_functional(&spec, &v).unwrap();
            let d = norm::dual_norm_eval(&spec, &lam).unwrap();
            let value = lam.apply(&v).unwrap();
            let ok = (d - 1.0).abs() <= 1e-9
                && (value.re - nv).abs() <= 1e-9 * nv.max(1.0)
                && value.im.abs() <= 1e-9 * nv.max(1.0);
            fails += usize::from(!ok);
            done += 1;
            total += 1;
        }
    }
    count(fails, total)
}

fn recovery_and_isometry() -> Outcome {
    let mut r = rng::seeded(1, 4);
    let (mut fails, mut total) = (0, 0);
    for family in 0..3 {
        for _ in 0..1_000 {
            let spec = family_spec(&mut r, family);
            let v = random::vector(&mut r, &spec);
            let nv = norm::norm_eval(&spec, &v).unwrap();
            let recovered = norm::recover_norm_by_duality(&spec, &v).unwrap();
            let iso = sphere::isometry_check(&spec, &v, 16, r.gen()).unwrap();
            let slack = 1e-9 * nv.max(1.0);
            let ok = (recovered - nv).abs() <= slack && iso.pass && (iso.lower - nv).abs() <= slack;
            fails += usize::from(!ok);
            total += 1;
        }
    }
    count(fails, total)
}

fn exact_a_and_b() -> Outcome {
    let mut r = rng::seeded(1, 5);
    let (mut fails, total) = (0, 100);
    for i in 0..total {
        let n = 1 + i % 8;
        let t = random::kernel(&mut r, n, Field::Real);
        let rows: Vec<Vec<f64>> = (0..n).map(|x| t.row(x).iter().map(|z| z.re).collect()).collect();
        let mut inf = 0.0f64;
        for mask in 0..(1u32 << n) {
            for row in &rows {
                let s: f64 = row
                    .iter()
                    .enumerate()
                    .map(|(j, x)| if mask >> j & 1 == 1 { -x } else { *x })
                    .sum();
                inf = inf.max(s.abs());
            }
        }
        let one = (0..n)
            .map(|y| rows.iter().map(|row| row[y].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let a = kernel::bound_inf(&t);
        let b = kernel::bound_one(&t);
        let ok = (a - inf).abs() <= 1e-12 * inf.max(1.0) && (b - one).abs() <= 1e-12 * one.max(1.0);
        fails += usize::from(!ok);
    }
    count(fails, total)
}

fn theorem_checks() -> Outcome {
    let mut r = rng::seeded(1, 6);
    let (mut fails, mut total) = (0, 0);
    for i in 0..1_000 {
        let n = r.gen_range(1..=8);
        let dim = r.gen_range(1..=6);
        let v = match i % 4 {
            0 => NormSpec::lp(1.0, dim, Field::Real).unwrap(),
            1 => NormSpec::lp(2.0, dim, Field::Real).unwrap(),
            2 => NormSpec::lp(f64::INFINITY, dim, Field::Real).unwrap(),
            _ => random::polytope(&mut r, dim),
        };
        let t = random::kernel(&mut r, n, Field::Real);
        let f = random::scalar_function(&mut r, n, Field::Real);
        let fv = random::vvalued_function(&mut r, n, &v);
        let records = kernel::check_inf_bounds(&t, &f, &fv, &v)
            .unwrap()
            .into_iter()
            .chain(kernel::check_one_bounds(&t, &f, &fv, &v).unwrap());
        for rec in records {
            fails += usize::from(!tol::leq(rec.lhs, rec.rhs, 1e-9));
            total += 1;
        }
    }
    count(fails, total)
}

fn diagonal_embedding() -> Outcome {
    let mut r = rng::seeded(1, 7);
    let (mut fails, mut total) = (0, 0);
    for i in 0..1_000 {
        let n = r.gen_range(1..=8);
        let field = if i % 2 == 0 { Field::Real } else { Field::Complex };
        let h = random::scalar_function(&mut r, n, field);
        let v = fs::ell1_space(n, field).unwrap();
        let lift = fs::diag_embed(&h);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let want = if p == 1.0 { fs::norm_1(&h) } else { fs::norm_p(&h, p).unwrap() };
            let got = fs::norm_p_v(&lift, &v, p).unwrap();
            fails += usize::from(!tol::close(got, want, 1e-12));
            total += 1;
        }
    }
    count(fails, total)
}

fn sandwich() -> Outcome {
    let mut r = rng::seeded(1, 8);
    let (mut fails, mut total) = (0, 0);
    for i in 0..100 {
        let n = r.gen_range(1..=8);
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let t = random::kernel(&mut r, n, field);
        for p in [1.5, 2.0, 3.0] {
            let seed = r.gen();
            let lower = pnorm::p_norm_scalar_lower(&t, p, seed, 200).unwrap().value;
            let vector = pnorm::vector_p_lower(&t, p, seed, 200).unwrap().value;
            let upper = pnorm::p_norm_upper(&t, p).unwrap();
            let ok = tol::leq(lower, vector, tol::EXACT) && tol::leq(vector, upper, tol::SAMPLED);
            fails += usize::from(!ok);
            total += 1;
        }
    }
    let shear = Kernel::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let reached = pnorm::p_norm_scalar_lower(&shear, 2.0, 1, 200).unwrap().value;
    if (reached - golden).abs() > 1e-5 {
        return Err(format!("shear reached {reached}, exact {golden}"));
    }
    count(fails, total).map(|s| format!("{s}; shear {reached:.9} vs {golden:.9}"))
}

fn schur_consequence() -> Outcome {
    let mut r = rng::seeded(1, 9);
    let (mut fails, mut total) = (0, 0);
    let mut detected = 0;
    let kernels = 20;
    for i in 0..kernels {
        let n = r.gen_range(1..=8);
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let t = random::kernel(&mut r, n, field);
        let p = [1.5, 2.0, 3.0][i % 3];
        let est = pnorm::vector_p_lower(&t, p, r.gen(), 200).unwrap();
        let bp = est.value + 1e-6;
        for _ in 0..1_000 {
            let h = ScalarFunction::new(gaussian_scalars(&mut r, n, field)).unwrap();
            fails += usize::from(!pnorm::check_schur_consequence(&t, p, bp, &h).unwrap().pass);
            total += 1;
        }
        // a constant strictly below the ratio observed on the search witness
        // must be caught, including the zero kernel where that ratio is 0
        let h = pnorm::p_norm_scalar_lower(&t, p, r.gen(), 200).unwrap().witness;
        let ratio = pnorm::schur_lhs(&t, p, &h).unwrap() / fs::norm_p(&h, p).unwrap();
        let rec = pnorm::check_schur_consequence(&t, p, ratio * (1.0 - 1e-3) - 1e-3, &h).unwrap();
        detected += usize::from(!rec.pass && rec.witness.is_some());
    }
    if detected < kernels {
        return Err(format!("injected fault detected on {detected} of {kernels} kernels"));
    }
    count(fails, total).map(|s| format!("{s}; {detected}/{kernels} injected faults reported with witness"))
}

fn cli_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_dualkern"))
            .args(["--reproducible", "--self-test", "--seed", "1", "--trials", "100"])
            .env_remove("DUALKERN_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    if first.status.code() != Some(0) {
        return Err(format!("suite exited with {:?}", first.status.code()));
    }
    if first.stdout != second.stdout {
        return Err("reports differ".into());
    }
    let text = String::from_utf8_lossy(&first.stdout);
    if text.contains("generated_at") {
        return Err("timestamp present under --reproducible".into());
    }
    Ok(format!("{} identical bytes, exit 0", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("norm axioms", norm_axioms),
        ("dual norm closed forms", dual_closed_forms),
        ("norming functionals", norming_functionals),
        ("duality recovery and isometry", recovery_and_isometry),
        ("exactness of a and b", exact_a_and_b),
        ("kernel bound theorems", theorem_checks),
        ("diagonal embedding", diagonal_embedding),
        ("p-norm sandwich", sandwich),
        ("mixed-norm consequence", schur_consequence),
        ("CLI determinism", cli_determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                all = false;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
