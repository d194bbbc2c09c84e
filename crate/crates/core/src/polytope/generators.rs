//! Named body constructors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::body::PolytopeBody;
use crate::error::{Error, Result};
use crate::tensor::VecN;

/// Axis-parallel box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
pub fn cuboid(lo: &[f64], hi: &[f64]) -> Result<PolytopeBody> {
    if lo.len() != hi.len() {
        return Err(Error::DimensionMismatch {
            expected: lo.len(),
            found: hi.len(),
        });
    }
    let n = lo.len();
    let pts = (0..1usize << n)
        .map(|m| {
            let c: Vec<f64> = (0..n)
                .map(|i| if (m >> i) & 1 == 1 { hi[i] } else { lo[i] })
                .collect();
            VecN::new(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    PolytopeBody::from_points(&pts)
}

/// The cube `[a, b]^n`.
pub fn cube(dim: usize, a: f64, b: f64) -> Result<PolytopeBody> {
    cuboid(&vec![a; dim], &vec![b; dim])
}

pub fn unit_cube(dim: usize) -> Result<PolytopeBody> {
    cube(dim, 0.0, 1.0)
}

/// The standard simplex `conv{o, e_1, ..., e_n}`.
pub fn simplex(dim: usize) -> Result<PolytopeBody> {
    let mut pts = vec![VecN::zeros(dim)];
    pts.extend((0..dim).map(|i| VecN::unit(dim, i)));
    PolytopeBody::from_points(&pts)
}

/// `conv{+-e_i}`.
pub fn cross_polytope(dim: usize) -> Result<PolytopeBody> {
    let pts: Vec<VecN> = (0..dim)
        .flat_map(|i| [VecN::unit(dim, i), -VecN::unit(dim, i)])
        .collect();
    PolytopeBody::from_points(&pts)
}

/// Hull of `count` uniform points in `[-half_width, half_width]^n`.
pub fn random_hull_in_box(
    dim: usize,
    count: usize,
    half_width: f64,
    seed: u64,
) -> Result<PolytopeBody> {
    if dim == 0 || dim > crate::tensor::MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<VecN> = (0..count)
        .map(|_| {
            let c: Vec<f64> = (0..dim)
                .map(|_| rng.random_range(-half_width..half_width))
                .collect();
            VecN::from_slice(&c)
        })
        .collect();
    PolytopeBody::from_points(&pts)
}

/// Random asymmetric body: hull of `count` uniform points in `[-1, 1]^n`,
/// translated by a seeded offset drawn from `[0, 2]^n`.
pub fn random_hull(dim: usize, count: usize, seed: u64) -> Result<PolytopeBody> {
    let body = random_hull_in_box(dim, count, 1.0, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let c: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..2.0)).collect();
    body.translate(&VecN::from_slice(&c))
}

/// Resolves a body description: `cube`, `cube:a:b`, `simplex`, `cross_polytope`,
/// `random:seed` (with `2n + 6` points), `random:count:seed`, or a path to a body JSON file.
pub fn body_from_spec(spec: &str, dim: usize) -> Result<PolytopeBody> {
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec)?;
        let raw: super::body::BodyJson = serde_json::from_str(&text)?;
        return raw.to_body();
    }
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let num = |i: usize| -> Result<f64> {
        args[i]
            .parse::<f64>()
            .map_err(|_| Error::Invalid(format!("bad number {:?} in {spec:?}", args[i])))
    };
    let int = |i: usize| -> Result<u64> {
        args[i]
            .parse::<u64>()
            .map_err(|_| Error::Invalid(format!("bad integer {:?} in {spec:?}", args[i])))
    };
    match (name, args.len()) {
        ("cube", 0) => unit_cube(dim),
        ("cube", 2) => cube(dim, num(0)?, num(1)?),
        ("simplex", 0) => simplex(dim),
        ("cross_polytope" | "cross", 0) => cross_polytope(dim),
        ("random" | "random_hull", 1) => random_hull(dim, 2 * dim + 6, int(0)?),
        ("random" | "random_hull", 2) => random_hull(dim, int(0)? as usize, int(1)?),
        _ => Err(Error::Unknown {
            kind: "body",
            name: spec.to_string(),
        }),
    }
}
