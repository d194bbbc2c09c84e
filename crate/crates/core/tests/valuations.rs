mod common;

use common::*;
use valuation_lab::generators::{cube, random_hull, simplex, unit_cube};
use valuation_lab::tensor::{metric_tensor, sym_power};
use valuation_lab::valuations::*;
use valuation_lab::{SymTensor, VecN};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn surface_atom_examples() {
    let atoms = surface_atoms(&unit_cube(3).unwrap());
    assert_eq!(atoms.len(), 6);
    assert!(atoms.iter().all(|a| (a.area - 1.0).abs() < 1e-15));
    assert!((atoms.iter().map(|a| a.area).sum::<f64>() - 6.0).abs() < 1e-14);

    let mut areas: Vec<f64> = surface_atoms(&triangle()).iter().map(|a| a.area).collect();
    areas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((areas[0] - 1.0).abs() < 1e-15 && (areas[1] - 1.0).abs() < 1e-15);
    assert!((areas[2] - SQRT2).abs() < 1e-15);

    let body = random_hull(3, 12, 2).unwrap();
    for (a, f) in surface_atoms(&body).iter().zip(body.facets()) {
        assert_vec_close(&a.boundary_moment, &(f.centroid * a.area), 1e-15);
        let centroid = a.boundary_moment * (1.0 / a.area);
        assert!((centroid.dot(&a.normal) - a.support_value).abs() < 1e-12);
    }
}

#[test]
fn q1_examples() {
    assert_vec_close(&q1(&unit_cube(3).unwrap()), &v(&[1.0, 1.0, 1.0]), 1e-14);
    let t = (1.0 + SQRT2) / 4.0;
    assert_vec_close(&q1(&triangle()), &v(&[t, t]), 1e-15);
    assert_vec_close(&q1(&octahedron()), &VecN::zeros(3), 1e-15);
    assert_vec_close(&q1(&cube(4, -1.0, 1.0).unwrap()), &VecN::zeros(4), 1e-14);
}

#[test]
fn upsilon_examples() {
    let c = unit_cube(3).unwrap();
    let u1 = upsilon(&c, 1).unwrap().to_vector().unwrap();
    assert_vec_close(&u1, &VecN::splat(3, 1.0 / 3.0), 1e-15);
    assert!((upsilon(&c, 0).unwrap().value().unwrap() - 1.0).abs() < 1e-15);
    assert_vec_close(
        &upsilon(&octahedron(), 1).unwrap().to_vector().unwrap(),
        &VecN::zeros(3),
        1e-15,
    );
    assert!(upsilon(&c, 5).is_err());
}

#[test]
fn xi_examples() {
    for (name, body) in generator_bodies(3, 2) {
        let x1 = xi(&body, 1).unwrap().to_vector().unwrap();
        assert!(x1.max_abs() < 1e-12 * body.surface_area(), "{name}");
        let x2 = xi(&body, 2).unwrap();
        let trace: f64 = (0..3).map(|i| x2.get(&[i, i])).sum();
        assert!((3.0 * trace - body.surface_area()).abs() < 1e-12 * body.surface_area());
    }
    let x2 = xi(&unit_cube(3).unwrap(), 2).unwrap();
    assert_tensor_close(&x2, &metric_tensor(3).unwrap().scale(2.0 / 3.0), 1e-15);
    assert!((3.0 * (0..3).map(|i| x2.get(&[i, i])).sum::<f64>() - 6.0).abs() < 1e-14);
}

#[test]
fn cone_volume_examples() {
    let cv = cone_volume_atoms(&unit_cube(3).unwrap());
    let mut masses: Vec<f64> = cv.atoms.iter().map(|a| a.mass).collect();
    masses.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (m, e) in masses
        .iter()
        .zip([0.0, 0.0, 0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0])
    {
        assert!((m - e).abs() < 1e-15);
    }
    assert!((cv.total - 1.0).abs() < 1e-15);
    assert!(!cv.origin_interior);

    let cv = cone_volume_atoms(&octahedron());
    assert_eq!(cv.atoms.len(), 8);
    assert!(cv.atoms.iter().all(|a| (a.mass - 1.0 / 6.0).abs() < 1e-15));
    assert!((cv.total - 4.0 / 3.0).abs() < 1e-14);
    assert!(cv.origin_interior);

    let far = unit_cube(3)
        .unwrap()
        .translate(&v(&[5.0, 0.0, 0.0]))
        .unwrap();
    let cv = cone_volume_atoms(&far);
    assert!(cv.atoms.iter().any(|a| a.mass < 0.0));
    assert!((cv.total - 1.0).abs() < 1e-13);
    assert!(!cv.origin_interior);
}

#[test]
fn cone_volume_total_is_volume() {
    for n in 2..=5 {
        for (name, body) in generator_bodies(n, 3) {
            let cv = cone_volume_atoms(&body);
            assert!(
                (cv.total - body.volume()).abs() <= 1e-10 * body.volume(),
                "{name} n={n}"
            );
        }
    }
}

#[test]
fn projected_moment_examples() {
    let c = unit_cube(3).unwrap();
    assert_vec_close(
        &projected_moment(&c, &VecN::unit(3, 2)).unwrap(),
        &v(&[0.5, 0.5, 0.0]),
        1e-14,
    );
    let diag = v(&[1.0, 1.0, 1.0]).normalized().unwrap();
    assert_vec_close(
        &projected_moment(&c, &diag).unwrap(),
        &VecN::zeros(3),
        1e-14,
    );
    for u in directions(3, 10, 1) {
        assert_vec_close(
            &projected_moment(&octahedron(), &u).unwrap(),
            &VecN::zeros(3),
            1e-14,
        );
        let z = projected_moment(&random_hull(3, 10, 4).unwrap(), &u).unwrap();
        assert!(z.dot(&u).abs() < 1e-12, "result must lie in u-perp");
    }
}

#[test]
fn shadow_functional_examples() {
    let c = unit_cube(3).unwrap();
    let e3 = VecN::unit(3, 2);
    assert!(
        (shadow_functional(&c, &e3, PolyField::One)
            .unwrap()
            .value()
            .unwrap()
            - 1.0)
            .abs()
            < 1e-15
    );
    let up = shadow_functional(&c, &e3, PolyField::Identity)
        .unwrap()
        .to_vector()
        .unwrap();
    assert_vec_close(&up, &v(&[0.5, 0.5, 1.0]), 1e-15);
    let down = shadow_functional(&c, &-e3, PolyField::Identity)
        .unwrap()
        .to_vector()
        .unwrap();
    assert_vec_close(&down, &v(&[0.5, 0.5, 0.0]), 1e-15);
    // top face: int x^2 has x1^2 -> 1/3, x1 x3 -> 1/2, x3^2 -> 1
    let sq = shadow_functional(&c, &e3, PolyField::Square).unwrap();
    assert!((sq.get(&[0, 0]) - 1.0 / 3.0).abs() < 1e-15);
    assert!((sq.get(&[0, 2]) - 0.5).abs() < 1e-15);
    assert!((sq.get(&[2, 2]) - 1.0).abs() < 1e-15);
    assert_eq!(
        "x3".parse::<PolyField>().unwrap_err(),
        valuation_lab::Error::UnsupportedField("x3".into())
    );
}

#[test]
fn shadow_functional_of_one_is_projected_volume() {
    for n in 2..=4 {
        for (name, body) in generator_bodies(n, 1) {
            for u in directions(n, 100, 7 + n as u64) {
                let f = shadow_functional(&body, &u, PolyField::One)
                    .unwrap()
                    .value()
                    .unwrap();
                let a = projected_volume(&body, &u).unwrap();
                assert!((f - a).abs() <= 1e-9 * a, "{name} n={n}");
            }
        }
    }
}

fn translation_bodies(n: usize) -> Vec<valuation_lab::PolytopeBody> {
    vec![
        unit_cube(n).unwrap(),
        simplex(n).unwrap(),
        random_hull(n, 12, 31).unwrap(),
        random_hull(n, 12, 32).unwrap(),
    ]
}

fn translations(n: usize) -> Vec<VecN> {
    let alt: Vec<f64> = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                (i / 2 + 1) as f64
            } else {
                -2.0 * (i / 2 + 1) as f64
            }
        })
        .collect();
    vec![VecN::unit(n, 0), v(&alt)]
}

#[test]
fn psi_translation_law() {
    for n in 2..=4 {
        for body in translation_bodies(n) {
            for t in translations(n) {
                let moved = body.translate(&t).unwrap();
                for r in 0..=2 {
                    let mut expect = SymTensor::zeros(r, n).unwrap();
                    let mut fact = 1.0;
                    for j in 0..=r {
                        if j > 0 {
                            fact *= j as f64;
                        }
                        let term = psi(&body, r - j)
                            .unwrap()
                            .sym_product(&sym_power(&t, j).unwrap())
                            .unwrap();
                        expect = expect.axpy(1.0 / fact, &term).unwrap();
                    }
                    let got = psi(&moved, r).unwrap();
                    let tol = 1e-10 * expect.max_abs().max(1.0);
                    assert_tensor_close(&got, &expect, tol);
                }
            }
        }
    }
}

#[test]
fn upsilon_translation_law() {
    for n in 2..=4 {
        for body in translation_bodies(n) {
            for t in translations(n) {
                let moved = body.translate(&t).unwrap();
                for r in 0..=2 {
                    let expect = upsilon(&body, r)
                        .unwrap()
                        .add(&xi(&body, r + 1).unwrap().contract(&t).unwrap())
                        .unwrap();
                    assert_tensor_close(
                        &upsilon(&moved, r).unwrap(),
                        &expect,
                        1e-10 * expect.max_abs().max(1.0),
                    );
                    assert_tensor_close(&xi(&moved, r).unwrap(), &xi(&body, r).unwrap(), 1e-12);
                }
            }
        }
    }
    let moved = unit_cube(3).unwrap().translate(&VecN::unit(3, 0)).unwrap();
    let u1 = upsilon(&moved, 1).unwrap().to_vector().unwrap();
    assert_vec_close(&u1, &v(&[1.0, 1.0 / 3.0, 1.0 / 3.0]), 1e-14);
}

#[test]
fn rotation_covariance() {
    for n in 2..=4 {
        let body = random_hull(n, 12, 40 + n as u64).unwrap();
        let rot = random_rotation(n, 77);
        let turned = body.linear_image(&rot).unwrap();
        assert_vec_close(&q1(&turned), &apply(&rot, &q1(&body)), 1e-10);
        let u = upsilon(&body, 1).unwrap().to_vector().unwrap();
        assert_vec_close(
            &upsilon(&turned, 1).unwrap().to_vector().unwrap(),
            &apply(&rot, &u),
            1e-10,
        );
    }
}
