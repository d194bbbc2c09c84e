//! Mixed (multilinear) functionals by inclusion-exclusion polarization over
//! Minkowski sums, and the directional derivative of the volume moment.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::factorial;
use crate::polytope::{EmbeddedProjection, PolytopeBody};
use crate::tensor::{SymTensor, VecN};
use crate::valuations::{self, PolyField};

/// Largest number of bodies accepted by [`polarize`].
pub const MAX_BODIES: usize = 6;

/// A Minkowski-polynomial functional that can be polarized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunctional {
    /// `q_1`, degree `n`.
    Q1,
    /// `Upsilon_1`, degree `n`.
    Upsilon1,
    /// `z_{n+1}`, degree `n + 1`.
    MomentZ,
    /// `V_{n-1}(K | u^perp)`, degree `n - 1`.
    ShadowArea(VecN),
}

impl BaseFunctional {
    /// Homogeneity degree in ambient dimension `n`.
    pub fn degree(&self, n: usize) -> usize {
        match self {
            BaseFunctional::Q1 | BaseFunctional::Upsilon1 => n,
            BaseFunctional::MomentZ => n + 1,
            BaseFunctional::ShadowArea(_) => n - 1,
        }
    }

    pub fn evaluate(&self, body: &PolytopeBody) -> Result<SymTensor> {
        Ok(match self {
            BaseFunctional::Q1 => SymTensor::from_vector(&valuations::q1(body)),
            BaseFunctional::Upsilon1 => valuations::upsilon(body, 1)?,
            BaseFunctional::MomentZ => SymTensor::from_vector(&body.moment()),
            BaseFunctional::ShadowArea(u) => {
                SymTensor::scalar(body.dim(), valuations::projected_volume(body, u)?)
            }
        })
    }
}

impl std::str::FromStr for BaseFunctional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q1" => Ok(BaseFunctional::Q1),
            "upsilon1" | "upsilon" => Ok(BaseFunctional::Upsilon1),
            "moment_z" | "z" => Ok(BaseFunctional::MomentZ),
            _ => Err(Error::Unknown {
                kind: "functional",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolarizationRequest {
    pub bodies: Vec<PolytopeBody>,
    pub base: BaseFunctional,
    pub degree: usize,
}

impl PolarizationRequest {
    /// Request with the degree implied by the functional and the bodies' dimension.
    pub fn new(bodies: Vec<PolytopeBody>, base: BaseFunctional) -> Result<Self> {
        let n = bodies
            .first()
            .ok_or(Error::BodyCount {
                expected: 1,
                found: 0,
            })?
            .dim();
        let degree = base.degree(n);
        Ok(Self {
            bodies,
            base,
            degree,
        })
    }
}

// Canonical order so that the result does not depend on how the caller listed the bodies.
fn canonical_cmp(a: &PolytopeBody, b: &PolytopeBody) -> Ordering {
    a.volume()
        .total_cmp(&b.volume())
        .then_with(|| {
            let (za, zb) = (a.moment(), b.moment());
            za.as_slice()
                .iter()
                .zip(zb.as_slice())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
        .then_with(|| a.vertices().len().cmp(&b.vertices().len()))
        .then_with(|| {
            a.vertices()
                .iter()
                .flat_map(|v| v.to_vec())
                .zip(b.vertices().iter().flat_map(|v| v.to_vec()))
                .map(|(x, y)| x.total_cmp(&y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// The fully mixed coefficient
/// `(1/m!) sum_{S nonempty} (-1)^{m-|S|} Phi(sum_{i in S} K_i)`.
pub fn polarize(req: &PolarizationRequest) -> Result<SymTensor> {
    let m = req.bodies.len();
    if m == 0 || m > MAX_BODIES {
        return Err(Error::BodyCount {
            expected: req.degree,
            found: m,
        });
    }
    let n = req.bodies[0].dim();
    for b in &req.bodies {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dim(),
            });
        }
    }
    if req.degree != req.base.degree(n) {
        return Err(Error::Invalid(format!(
            "functional has degree {} in dimension {n}, request says {}",
            req.base.degree(n),
            req.degree
        )));
    }
    if m != req.degree {
        return Err(Error::BodyCount {
            expected: req.degree,
            found: m,
        });
    }

    let mut order: Vec<&PolytopeBody> = req.bodies.iter().collect();
    order.sort_by(|a, b| canonical_cmp(a, b));

    // sums[mask] = sums[mask without lowest bit] + K_lowest
    let full = 1usize << m;
    let mut sums: Vec<Option<PolytopeBody>> = vec![None; full];
    let mut total: Option<SymTensor> = None;
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = if rest == 0 {
            order[low].clone()
        } else {
            sums[rest]
                .as_ref()
                .expect("subsets visited in order")
                .minkowski_sum(order[low])?
        };
        let value = req.base.evaluate(&sum)?;
        let sign = if (m - mask.count_ones() as usize).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        match total.as_mut() {
            None => total = Some(value.scale(sign)),
            Some(t) => t.add_scaled_in_place(sign, &value),
        }
        sums[mask] = Some(sum);
    }
    Ok(total
        .expect("at least one subset")
        .scale(1.0 / factorial(m)))
}

fn polarize_vector(bodies: &[PolytopeBody], base: BaseFunctional) -> Result<VecN> {
    let req = PolarizationRequest::new(bodies.to_vec(), base)?;
    Ok(polarize(&req)?
        .to_vector()
        .expect("vector-valued functional"))
}

/// `z(K_1, ..., K_n, B^n)`, through `(n/(n+1)) q_1` polarized; no ball is constructed.
pub fn mixed_moment_with_ball(bodies: &[PolytopeBody]) -> Result<VecN> {
    let q = polarize_vector(bodies, BaseFunctional::Q1)?;
    let n = q.dim() as f64;
    Ok(q * (n / (n + 1.0)))
}

/// `Upsilon^{(1)}(K_1, ..., K_n)` as the polarization of `Upsilon_1`.
pub fn upsilon_mixed(bodies: &[PolytopeBody]) -> Result<VecN> {
    polarize_vector(bodies, BaseFunctional::Upsilon1)
}

/// Mixed moment vector `z_n(K_1|u^perp, ..., K_n|u^perp)` of shadows taken
/// along one direction, embedded back into `R^n`.
pub fn mixed_projected_moment(shadows: &[EmbeddedProjection]) -> Result<VecN> {
    let first = shadows.first().ok_or(Error::BodyCount {
        expected: 1,
        found: 0,
    })?;
    let n = first.direction().dim();
    if shadows.len() != n {
        return Err(Error::BodyCount {
            expected: n,
            found: shadows.len(),
        });
    }
    for s in &shadows[1..] {
        if (*s.direction() - *first.direction()).max_abs() > 1e-12 {
            return Err(Error::MixedDirections);
        }
    }
    let bodies: Vec<PolytopeBody> = shadows.iter().map(|s| s.shadow().clone()).collect();
    let coords = polarize_vector(&bodies, BaseFunctional::MomentZ)?;
    Ok(first.embed(&coords))
}

/// Result of the directional-derivative fit.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeFit {
    pub derivative: VecN,
    /// `|p(0) - z_{n+1}(K)|_inf` for the interpolating polynomial `p`.
    pub residual: f64,
}

/// `lim_{e -> 0+} (z_{n+1}(K + e[o,u]) - z_{n+1}(K)) / e`, by exact polynomial
/// interpolation of `e -> z_{n+1}(K + e[o,u])` at `n + 2` positive nodes.
pub fn directional_derivative_fit(body: &PolytopeBody, u: &VecN) -> Result<DerivativeFit> {
    u.require_dim(body.dim())?;
    u.require_unit()?;
    let n = body.dim();
    let r = body.circumradius();
    let nodes: Vec<f64> = (1..=n + 2).map(|k| k as f64 * r / 8.0).collect();
    let values = nodes
        .iter()
        .map(|&e| {
            Ok(body
                .minkowski_sum_points(&[VecN::zeros(n), *u * e])?
                .moment())
        })
        .collect::<Result<Vec<VecN>>>()?;

    let mut slope = VecN::zeros(n);
    let mut at_zero = VecN::zeros(n);
    for (k, &xk) in nodes.iter().enumerate() {
        // Lagrange basis L_k at 0 and its derivative at 0
        let mut l0 = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j != k {
                l0 *= -xj / (xk - xj);
            }
        }
        let mut d0 = 0.0;
        for (m, &xm) in nodes.iter().enumerate() {
            if m == k {
                continue;
            }
            let mut term = 1.0 / (xk - xm);
            for (j, &xj) in nodes.iter().enumerate() {
                if j != k && j != m {
                    term *= -xj / (xk - xj);
                }
            }
            d0 += term;
        }
        slope = slope.axpy(d0, &values[k]);
        at_zero = at_zero.axpy(l0, &values[k]);
    }
    let residual = (at_zero - body.moment()).max_abs();
    let limit = 1e-8 * body.moment().max_abs().max(body.volume() * r);
    if residual > limit {
        return Err(Error::FitResidual { residual, limit });
    }
    Ok(DerivativeFit {
        derivative: slope,
        residual,
    })
}

/// `(n+1) z(K, ..., K, [o,u])`, which equals `int_{K|u^perp} y_u^+ dx`.
pub fn directional_derivative_moment(body: &PolytopeBody, u: &VecN) -> Result<VecN> {
    Ok(directional_derivative_fit(body, u)?.derivative)
}

/// The coarea-side counterpart of [`directional_derivative_moment`].
pub fn upper_boundary_moment(body: &PolytopeBody, u: &VecN) -> Result<VecN> {
    Ok(valuations::shadow_functional(body, u, PolyField::Identity)?
        .to_vector()
        .expect("rank 1"))
}
