//! Library results against independent oracles: closed forms, hand-derived
//! vertices, and brute-force search written without the library.

use dualkern::function_space::{self as fs, ScalarFunction, VValuedFunction};
use dualkern::kernel::{self, Kernel};
use dualkern::norm::{self, Field, Functional, NormSpec, Scalar, Vector};
use dualkern::pnorm;
use dualkern::rng;
use dualkern::sphere;
use rand::Rng;

fn hexagon() -> NormSpec {
    NormSpec::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap()
}

/// `max λ·v` over the boundary of `{ max(|x|, |y|, |x+y|) ≤ 1 }`, by an angle
/// grid refined twice around the best angle.
fn hexagon_dual_by_search(lam: [f64; 2]) -> f64 {
    let value = |theta: f64| {
        let (x, y) = (theta.cos(), theta.sin());
        let gauge = x.abs().max(y.abs()).max((x + y).abs());
        (lam[0] * x + lam[1] * y) / gauge
    };
    let mut center = 0.0;
    let mut width = std::f64::consts::TAU;
    let mut best = f64::NEG_INFINITY;
    for _ in 0..3 {
        let steps = 20_000;
        let start = center - width / 2.0;
        for i in 0..=steps {
            let theta = start + width * i as f64 / steps as f64;
            let v = value(theta);
            if v > best {
                best = v;
                center = theta;
            }
        }
        width = 4.0 * width / steps as f64;
    }
    best
}

#[test]
fn hexagon_dual_norm_matches_primal_ball_search() {
    // vertices of the unit ball, found by hand
    let vertices = [[1.0, 0.0], [0.0, 1.0], [-1.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, -1.0]];
    let spec = hexagon();
    let mut r = rng::seeded(11, 0);
    let mut cases = vec![[1.0, 1.0], [1.0, 0.0], [1.0, -1.0], [0.0, 0.0], [2.0, 3.0]];
    cases.extend((0..200).map(|_| [r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)]));
    for lam in cases {
        let got = norm::dual_norm_eval(&spec, &Functional::from_real(&lam)).unwrap();
        let by_vertices = vertices
            .iter()
            .map(|v| lam[0] * v[0] + lam[1] * v[1])
            .fold(f64::NEG_INFINITY, f64::max);
        let by_search = hexagon_dual_by_search(lam);
        assert!((got - by_vertices).abs() <= 1e-12 * by_vertices.max(1.0), "{lam:?}: {got} vs {by_vertices}");
        assert!((got - by_search).abs() <= 1e-6 * by_search.max(1.0), "{lam:?}: {got} vs {by_search}");
    }
}

fn q_norm(lam: &[Scalar], q: f64) -> f64 {
    if q.is_infinite() {
        lam.iter().map(|z| z.norm()).fold(0.0, f64::max)
    } else {
        lam.iter().map(|z| z.norm().powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

#[test]
fn lp_dual_norm_is_the_conjugate_norm() {
    let mut r = rng::seeded(12, 0);
    for &(p, q) in &[(1.0, f64::INFINITY), (1.5, 3.0), (2.0, 2.0), (3.0, 1.5), (f64::INFINITY, 1.0)] {
        for dim in 2..=6 {
            for field in [Field::Real, Field::Complex] {
                let spec = NormSpec::lp(p, dim, field).unwrap();
                for _ in 0..20 {
                    let lam = spec.random_functional(&mut r);
                    let got = norm::dual_norm_eval(&spec, &lam).unwrap();
                    let want = q_norm(lam.coords(), q);
                    assert!((got - want).abs() <= 1e-9 * want.max(1.0), "p={p} dim={dim}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn weighted_dual_scales_by_reciprocal_weights() {
    let w = vec![2.0, 0.5, 4.0];
    let spec = NormSpec::weighted_lp(3.0, w.clone(), Field::Real).unwrap();
    let lam = [1.0, -2.0, 0.5];
    let scaled: Vec<Scalar> = lam.iter().zip(&w).map(|(l, w)| Scalar::new(l / w, 0.0)).collect();
    let got = norm::dual_norm_eval(&spec, &Functional::from_real(&lam)).unwrap();
    assert!((got - q_norm(&scaled, 1.5)).abs() < 1e-12);
}

#[test]
fn golden_ratio_is_the_two_norm_of_the_shear() {
    let t = Kernel::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let est = pnorm::p_norm_scalar_lower(&t, 2.0, 1, 200).unwrap();
    assert!((est.value - golden).abs() <= 1e-5, "{}", est.value);
    assert!(est.value <= golden * (1.0 + 1e-12));
}

#[test]
fn rank_one_and_diagonal_p_norms() {
    // ‖u vᵀ‖_{p→p} = ‖u‖_p ‖v‖_q for nonnegative u, v
    let u = [1.0, 2.0, 0.5];
    let v = [0.3, 1.0, 2.0];
    let rows: Vec<Vec<f64>> = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
    let t = Kernel::from_real_rows(&rows).unwrap();
    for &p in &[1.5, 2.0, 3.0] {
        let q = p / (p - 1.0);
        let exact = u.iter().map(|x: &f64| x.powf(p)).sum::<f64>().powf(1.0 / p)
            * v.iter().map(|x: &f64| x.powf(q)).sum::<f64>().powf(1.0 / q);
        let est = pnorm::p_norm_scalar_lower(&t, p, 3, 200).unwrap().value;
        assert!((est - exact).abs() <= 1e-8 * exact, "p={p}: {est} vs {exact}");
    }
    let d = Kernel::from_real_rows(&[vec![0.5, 0.0, 0.0], vec![0.0, -3.0, 0.0], vec![0.0, 0.0, 2.0]]).unwrap();
    for &p in &[1.5, 2.0, 3.0] {
        let est = pnorm::p_norm_scalar_lower(&d, p, 3, 200).unwrap().value;
        assert!((est - 3.0).abs() <= 1e-9, "p={p}: {est}");
    }
}

#[test]
fn row_and_column_sums_match_brute_force() {
    let mut r = rng::seeded(13, 0);
    for n in 1..=6 {
        for _ in 0..20 {
            let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(-3.0..3.0)).collect()).collect();
            let t = Kernel::from_real_rows(&rows).unwrap();
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
                .map(|j| rows.iter().map(|row| row[j].abs()).sum::<f64>())
                .fold(0.0, f64::max);
            assert!((kernel::bound_inf(&t) - inf).abs() <= 1e-12 * inf.max(1.0));
            assert!((kernel::bound_one(&t) - one).abs() <= 1e-12 * one.max(1.0));
        }
    }
}

#[test]
fn dense_sphere_samples_approach_the_norm() {
    let spec = NormSpec::lp(3.0, 2, Field::Real).unwrap();
    let v = Vector::from_real(&[1.0, -2.0]);
    let norm = norm::norm_eval(&spec, &v).unwrap();
    let mut previous_gap = f64::INFINITY;
    for n in [10, 1_000, 100_000] {
        let sample = sphere::sphere_sample(&spec, n, 5, &[]).unwrap();
        let sup = sphere::sup_norm(&sphere::embed(&v, &sample).unwrap()).unwrap();
        let gap = norm - sup;
        assert!(gap >= -1e-12);
        assert!(gap <= previous_gap);
        previous_gap = gap;
    }
    assert!(previous_gap < 1e-3 * norm, "{previous_gap}");
}

#[test]
fn diagonal_lift_matches_the_mixed_norm_formula() {
    let h = ScalarFunction::from_real(&[1.0, -2.0, 0.0, 3.5]).unwrap();
    let lift = fs::diag_embed(&h);
    let by_hand: VValuedFunction = VValuedFunction::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, -2.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 3.5],
    ])
    .unwrap();
    assert_eq!(lift, by_hand);
    for &p in &[1.0, 1.5, 2.0, 3.0] {
        let want = [1.0f64, 2.0, 0.0, 3.5].iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p);
        assert!((fs::mixed_norm(&lift, p).unwrap() - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn closed_form_bounds_report_examples() {
    let t = Kernel::from_real_rows(&[vec![1.0, -2.0], vec![3.0, 4.0]]).unwrap();
    assert_eq!(kernel::bound_inf(&t), 7.0);
    assert_eq!(kernel::bound_one(&t), 6.0);
    assert!((pnorm::p_norm_upper(&t, 2.0).unwrap() - 42f64.sqrt()).abs() < 1e-12);
    let id = Kernel::identity(3).unwrap();
    let est = pnorm::vector_p_lower(&id, 2.0, 1, 200).unwrap();
    assert!((est.value - 1.0).abs() < 1e-12);
    assert!((pnorm::p_norm_upper(&id, 2.0).unwrap() - 1.0).abs() < 1e-12);
}
