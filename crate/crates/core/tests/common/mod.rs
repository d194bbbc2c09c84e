#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use valuation_lab::{PolytopeBody, SymTensor, VecN};

pub fn v(c: &[f64]) -> VecN {
    VecN::new(c).unwrap()
}

pub fn assert_vec_close(a: &VecN, b: &VecN, tol: f64) {
    let d = (*a - *b).max_abs();
    assert!(d <= tol, "{a:?} vs {b:?} (diff {d:e}, tol {tol:e})");
}

pub fn assert_tensor_close(a: &SymTensor, b: &SymTensor, tol: f64) {
    let d = a.max_abs_diff(b).unwrap();
    assert!(d <= tol, "{a:?} vs {b:?} (diff {d:e}, tol {tol:e})");
}

pub fn gaussian_vec(n: usize, rng: &mut ChaCha8Rng) -> VecN {
    let c: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    VecN::new(&c).unwrap()
}

/// Seeded unit directions.
pub fn directions(n: usize, count: usize, seed: u64) -> Vec<VecN> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| gaussian_vec(n, &mut rng).normalized().unwrap())
        .collect()
}

/// Seeded orthogonal matrix (rows) from Gram-Schmidt on Gaussian vectors.
pub fn random_rotation(n: usize, seed: u64) -> Vec<VecN> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<VecN> = Vec::new();
    while rows.len() < n {
        let mut g = gaussian_vec(n, &mut rng);
        for r in &rows {
            let c = g.dot(r);
            g = g.axpy(-c, r);
        }
        if g.norm() > 1e-3 {
            rows.push(g.normalized().unwrap());
        }
    }
    rows
}

pub fn apply(rows: &[VecN], x: &VecN) -> VecN {
    let c: Vec<f64> = rows.iter().map(|r| r.dot(x)).collect();
    VecN::new(&c).unwrap()
}

pub fn octahedron() -> PolytopeBody {
    valuation_lab::generators::cross_polytope(3).unwrap()
}

pub fn triangle() -> PolytopeBody {
    PolytopeBody::from_points(&[v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap()
}

/// Generator bodies in dimension `n`: cube, simplex, cross-polytope and seeded random hulls.
pub fn generator_bodies(n: usize, randoms: u64) -> Vec<(String, PolytopeBody)> {
    use valuation_lab::generators::*;
    let mut out = vec![
        ("cube".to_string(), unit_cube(n).unwrap()),
        ("simplex".to_string(), simplex(n).unwrap()),
        ("cross_polytope".to_string(), cross_polytope(n).unwrap()),
    ];
    for s in 0..randoms {
        out.push((
            format!("random:{}:{s}", 2 * n + 6),
            random_hull(n, 2 * n + 6, s).unwrap(),
        ));
    }
    out
}
