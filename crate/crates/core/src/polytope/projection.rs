use super::body::PolytopeBody;
use crate::error::{Error, Result};
use crate::tensor::VecN;

/// Orthonormal basis of `u^perp`: columns `1..n-1` of the Householder
/// reflection that maps `e_n` to `u`.
pub fn orthonormal_complement(u: &VecN) -> Result<Vec<VecN>> {
    u.require_unit()?;
    let n = u.dim();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let last = u[n - 1];
    let tail: f64 = (0..n - 1).map(|i| u[i] * u[i]).sum();
    let mut w = -*u;
    // 1 - u_n without cancellation
    w[n - 1] = if last > 0.0 {
        tail / (1.0 + last)
    } else {
        1.0 - last
    };
    let ww = w.norm_sq();
    Ok((0..n - 1)
        .map(|j| {
            let e = VecN::unit(n, j);
            if ww == 0.0 {
                e
            } else {
                e.axpy(-2.0 * w[j] / ww, &w)
            }
        })
        .collect())
}

/// `K | u^perp` expressed in an orthonormal basis of `u^perp`.
#[derive(Clone, Debug)]
pub struct EmbeddedProjection {
    direction: VecN,
    basis: Vec<VecN>,
    shadow: PolytopeBody,
}

impl EmbeddedProjection {
    pub fn direction(&self) -> &VecN {
        &self.direction
    }

    pub fn basis(&self) -> &[VecN] {
        &self.basis
    }

    /// The projected body in basis coordinates (dimension `n - 1`).
    pub fn shadow(&self) -> &PolytopeBody {
        &self.shadow
    }

    /// Maps basis coordinates back into `R^n`.
    pub fn embed(&self, coords: &VecN) -> VecN {
        let mut out = VecN::zeros(self.direction.dim());
        for (c, b) in coords.as_slice().iter().zip(&self.basis) {
            out = out.axpy(*c, b);
        }
        out
    }

    /// Coordinates of the orthogonal projection of `x` onto `u^perp`.
    pub fn coords(&self, x: &VecN) -> VecN {
        let c: Vec<f64> = self.basis.iter().map(|b| b.dot(x)).collect();
        VecN::from_slice(&c)
    }
}

pub(crate) fn project_points(points: &[VecN], basis: &[VecN]) -> Vec<VecN> {
    let mut out = Vec::with_capacity(points.len());
    let mut c = [0.0; crate::tensor::MAX_DIM];
    for p in points {
        for (k, b) in basis.iter().enumerate() {
            c[k] = b.dot(p);
        }
        out.push(VecN::from_slice(&c[..basis.len()]));
    }
    out
}

/// Orthogonal projection of `body` to the hyperplane `u^perp`.
pub fn project(body: &PolytopeBody, u: &VecN) -> Result<EmbeddedProjection> {
    u.require_dim(body.dim())?;
    let basis = orthonormal_complement(u)?;
    let shadow = PolytopeBody::from_points(&project_points(body.vertices(), &basis))?;
    Ok(EmbeddedProjection {
        direction: *u,
        basis,
        shadow,
    })
}
