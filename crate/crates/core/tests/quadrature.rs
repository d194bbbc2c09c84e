mod common;

use std::f64::consts::PI;

use common::*;
use valuation_lab::quadrature::*;
use valuation_lab::{kappa, metric_tensor, omega, sym_power, Error, SymTensor, VecN};

fn within_se(est: &Estimate, exact: &SymTensor, k: f64) {
    for ((e, x), s) in est
        .value
        .coeffs()
        .iter()
        .zip(exact.coeffs())
        .zip(est.std_error.coeffs())
    {
        assert!((e - x).abs() <= k * s + 1e-12, "{e} vs {x} (se {s})");
    }
}

#[test]
fn constant_integrates_to_sphere_area() {
    let s = SphereSampler::monte_carlo(3, 1000, 1).unwrap();
    let est = integrate_scalar(&s, Symmetry::General, |_| Ok(1.0)).unwrap();
    assert!((est.value.value().unwrap() - 4.0 * PI).abs() < 1e-12);
    assert_eq!(est.std_error.value().unwrap(), 0.0);
    assert_eq!(est.samples_used, 1000);
    let g = SphereSampler::circle_grid(17).unwrap();
    let est = integrate_scalar(&g, Symmetry::General, |_| Ok(1.0)).unwrap();
    assert!((est.value.value().unwrap() - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn directions_are_unit_and_antipodal() {
    for n in 2..=5 {
        let s = SphereSampler::monte_carlo(n, 200, 7).unwrap();
        let dirs = s.directions().unwrap();
        assert_eq!(dirs.len(), 200);
        for pair in dirs.chunks(2) {
            assert!((pair[0].norm() - 1.0).abs() < 1e-14);
            assert_eq!(pair[1], -pair[0]);
        }
        assert_eq!(dirs[10], s.monte_carlo_direction(5).unwrap());
    }
}

#[test]
fn estimates_are_deterministic() {
    let s = SphereSampler::monte_carlo(4, 5000, 99).unwrap();
    let f = |u: &VecN| Ok(sym_power(u, 2).unwrap().scale(u[0].abs() + u[1]));
    let a = integrate(&s, Symmetry::General, f).unwrap();
    let b = integrate(&s, Symmetry::General, f).unwrap();
    assert_eq!(a, b);
    let other = SphereSampler::monte_carlo(4, 5000, 100).unwrap();
    assert_ne!(integrate(&other, Symmetry::General, f).unwrap(), a);
}

#[test]
fn odd_integrands_vanish_exactly() {
    for n in 2..=5 {
        let s = SphereSampler::monte_carlo(n, 2000, 3).unwrap();
        let est = integrate(&s, Symmetry::General, |u| Ok(SymTensor::from_vector(u))).unwrap();
        assert!(est.value.coeffs().iter().all(|&c| c == 0.0));
        let cubic = integrate(&s, Symmetry::General, |u| Ok(sym_power(u, 3).unwrap())).unwrap();
        assert!(cubic.value.coeffs().iter().all(|&c| c == 0.0));
    }
}

#[test]
fn abs_inner_product_integral() {
    for n in 2..=5 {
        let exact = SymTensor::scalar(n, 2.0 * kappa(n - 1));
        let s = SphereSampler::monte_carlo(n, 100_000, 2024 + n as u64).unwrap();
        for v in directions(n, 10, 500 + n as u64) {
            let est = integrate_scalar(&s, Symmetry::Even, |u| Ok(v.dot(u).abs())).unwrap();
            within_se(&est, &exact, 3.0);
        }
    }
    let g = SphereSampler::circle_grid(DEFAULT_GRID_NODES).unwrap();
    for v in directions(2, 10, 8) {
        let est = integrate_scalar(&g, Symmetry::Even, |u| Ok(v.dot(u).abs())).unwrap();
        assert!((est.value.value().unwrap() - 4.0).abs() < 1e-8);
    }
}

#[test]
fn even_hint_matches_general_evaluation() {
    let s = SphereSampler::monte_carlo(3, 4000, 5).unwrap();
    let f = |u: &VecN| Ok(u[0].abs() * u[1] * u[1]);
    let a = integrate_scalar(&s, Symmetry::Even, f).unwrap();
    let b = integrate_scalar(&s, Symmetry::General, f).unwrap();
    assert!((a.value.value().unwrap() - b.value.value().unwrap()).abs() < 1e-12);
    let g = SphereSampler::circle_grid(1000).unwrap();
    let a = integrate_scalar(&g, Symmetry::Even, f).unwrap();
    let b = integrate_scalar(&g, Symmetry::General, f).unwrap();
    assert!((a.value.value().unwrap() - b.value.value().unwrap()).abs() < 1e-12);
}

#[test]
fn subsphere_moments() {
    let e3 = v(&[0.0, 0.0, 1.0]);
    let s = subsphere_sampler(&e3, Method::MonteCarloAntithetic, 100_000, 11).unwrap();
    for u in s.directions().unwrap().iter().take(100) {
        assert!(u.dot(&e3).abs() < 1e-15);
    }
    let mass = integrate_scalar(&s, Symmetry::Even, |_| Ok(1.0)).unwrap();
    assert!((mass.value.value().unwrap() - omega(2)).abs() < 1e-12);
    let first = integrate(&s, Symmetry::General, |w| Ok(SymTensor::from_vector(w))).unwrap();
    assert!(first.value.coeffs().iter().all(|&c| c == 0.0));
    let exact = metric_tensor(3)
        .unwrap()
        .sub(&sym_power(&e3, 2).unwrap())
        .unwrap()
        .scale(PI);
    let second = integrate(&s, Symmetry::Even, |w| sym_power(w, 2)).unwrap();
    within_se(&second, &exact, 3.0);

    // the circle grid integrates trigonometric polynomials exactly
    let g = subsphere_sampler(&e3, Method::CircleGrid, 64, 0).unwrap();
    let second = integrate(&g, Symmetry::Even, |w| sym_power(w, 2)).unwrap();
    assert_tensor_close(&second.value, &exact, 1e-12);

    // a tilted normal in n = 4
    let n4 = v(&[0.5, -0.5, 0.5, 0.5]);
    let s = subsphere_sampler(&n4, Method::MonteCarloAntithetic, 40_000, 12).unwrap();
    let exact = metric_tensor(4)
        .unwrap()
        .sub(&sym_power(&n4, 2).unwrap())
        .unwrap()
        .scale(kappa(3));
    within_se(
        &integrate(&s, Symmetry::Even, |w| sym_power(w, 2)).unwrap(),
        &exact,
        3.0,
    );
}

#[test]
fn absmoment_closed_form_examples() {
    let t = absmoment_tensor(&v(&[1.0, 0.0, 0.0])).unwrap();
    let d = [PI, PI / 2.0, PI / 2.0];
    for (i, &di) in d.iter().enumerate() {
        for j in i..3 {
            let want = if i == j { di } else { 0.0 };
            assert!((t.get(&[i, j]) - want).abs() < 1e-14);
        }
    }
    let t = absmoment_tensor(&v(&[1.0, 0.0])).unwrap();
    assert!((t.get(&[0, 0]) - 8.0 / 3.0).abs() < 1e-14);
    assert!((t.get(&[1, 1]) - 4.0 / 3.0).abs() < 1e-14);
    assert_eq!(t.get(&[0, 1]), 0.0);
}

#[test]
fn absmoment_closed_form_is_rotation_covariant() {
    for n in 2..=5 {
        let r = random_rotation(n, 31 + n as u64);
        for vv in directions(n, 3, n as u64) {
            let rv = apply(&r, &vv);
            let lhs = absmoment_tensor(&rv).unwrap();
            let base = absmoment_tensor(&vv).unwrap();
            // (R T R^T)_{ij} = T(R^T e_i, R^T e_j), and R^T e_i is row i of R
            for i in 0..n {
                for j in i..n {
                    let conj = base.eval(&[r[i], r[j]]).unwrap();
                    assert!((lhs.get(&[i, j]) - conj).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn absmoment_matches_quadrature() {
    for n in 2..=4 {
        let vv = directions(n, 1, 77 + n as u64)[0];
        let s = SphereSampler::monte_carlo(n, 200_000, 42).unwrap();
        let est = integrate(&s, Symmetry::Even, |u| {
            Ok(sym_power(u, 2)?.scale(vv.dot(u).abs()))
        })
        .unwrap();
        within_se(&est, &absmoment_tensor(&vv).unwrap(), 3.0);
    }
}

#[test]
fn beta_moments() {
    for n in 2..=7 {
        let nf = n as f64;
        let c = beta_moment_cubic(n).unwrap();
        assert!(
            (c.value - 4.0 / (nf * nf - 1.0)).abs() < 1e-10,
            "n={n}: {c:?}"
        );
        let l = beta_moment_linear(n).unwrap();
        assert!((l.value - 2.0 / (nf + 1.0)).abs() < 1e-10, "n={n}: {l:?}");
    }
    assert!(beta_moment_cubic(1).is_err());
}

#[test]
fn interval_rule_basics() {
    let e = integrate_interval(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
    assert!((e.value - 9.0).abs() < 1e-12);
    assert!(integrate_interval(|x| x, 0.0, f64::INFINITY, 1e-12).is_err());
}

#[test]
fn non_finite_integrand_reports_direction() {
    let s = SphereSampler::monte_carlo(3, 100, 1).unwrap();
    let first = s.monte_carlo_direction(0).unwrap();
    match integrate_scalar(&s, Symmetry::Even, |_| Ok(f64::NAN)) {
        Err(Error::NonFiniteIntegrand(u)) => assert_eq!(u, first.to_vec()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn invalid_samplers_are_rejected() {
    assert!(SphereSampler::monte_carlo(3, 101, 0).is_err());
    assert!(SphereSampler::monte_carlo(3, 2, 0).is_err());
    assert!(SphereSampler::monte_carlo(6, 100, 0).is_err());
    assert!(SphereSampler::new(3, Method::CircleGrid, 100, 0).is_err());
    assert!(matches!(
        subsphere_sampler(&v(&[1.0, 0.0]), Method::MonteCarloAntithetic, 100, 0),
        Err(Error::SubsphereDimension(2))
    ));
    assert!(subsphere_sampler(&v(&[1.0, 1.0, 0.0]), Method::MonteCarloAntithetic, 100, 0).is_err());
    assert!("mc".parse::<Method>().is_ok() && "grid".parse::<Method>().is_ok());
    assert!("qmc".parse::<Method>().is_err());
}

#[test]
fn sampler_json_round_trip() {
    let s = subsphere_sampler(&v(&[0.0, 0.6, 0.8]), Method::MonteCarloAntithetic, 100, 9).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<SphereSampler>(&text).unwrap(), s);
}
