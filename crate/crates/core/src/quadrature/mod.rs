//! Seeded, deterministic integration over the unit sphere `S^{n-1}` (and over
//! great subspheres `S^{n-1} ∩ v^perp`) with respect to spherical Lebesgue measure.
//!
//! Monte Carlo directions are normalized standard Gaussian vectors. Sample `i`
//! is drawn from its own ChaCha stream keyed by `(seed, i)`, so the sample
//! sequence does not depend on how the work is split across threads. Every
//! direction is used together with its antipode.
//!
//! The circle grid (for circles only) is the midpoint/trapezoid rule on uniform
//! angles. For integrands that are piecewise smooth with finitely many kinks its
//! error is `O(count^-2)`; it reports a zero standard error.

mod line;

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::orthonormal_complement;
use crate::tensor::{omega, SymTensor, VecN, MAX_DIM};

pub use line::{beta_moment_cubic, beta_moment_linear, integrate_interval, LineEstimate};

/// Work units per parallel chunk; fixes the reduction order.
const CHUNK: usize = 1024;

/// Default number of circle-grid nodes.
pub const DEFAULT_GRID_NODES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarloAntithetic,
    CircleGrid,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mc" | "monte_carlo" | "monte_carlo_antithetic" => Ok(Method::MonteCarloAntithetic),
            "grid" | "circle_grid" => Ok(Method::CircleGrid),
            _ => Err(Error::Unknown {
                kind: "method",
                name: s.to_string(),
            }),
        }
    }
}

/// Symmetry of the integrand under `u -> -u`, used to skip redundant evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// No assumption: both members of an antipodal pair are evaluated.
    General,
    /// `f(-u) = f(u)`: one evaluation per antipodal pair.
    Even,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereSampler {
    /// Ambient dimension `n`.
    pub dim: usize,
    pub method: Method,
    /// Number of directions (antipodes included).
    pub count: usize,
    pub seed: u64,
    /// When set, directions are restricted to `S^{n-1} ∩ v^perp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsphere_normal: Option<VecN>,
}

impl SphereSampler {
    pub fn new(dim: usize, method: Method, count: usize, seed: u64) -> Result<Self> {
        let s = Self {
            dim,
            method,
            count,
            seed,
            subsphere_normal: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn monte_carlo(dim: usize, count: usize, seed: u64) -> Result<Self> {
        Self::new(dim, Method::MonteCarloAntithetic, count, seed)
    }

    pub fn circle_grid(count: usize) -> Result<Self> {
        Self::new(2, Method::CircleGrid, count, 0)
    }

    /// Circle grid in the plane, Monte Carlo otherwise.
    pub fn default_for(dim: usize, samples: usize, seed: u64) -> Result<Self> {
        if dim == 2 {
            Self::circle_grid(DEFAULT_GRID_NODES)
        } else {
            Self::monte_carlo(dim, samples, seed)
        }
    }

    /// Dimension of the linear space spanned by the sampled sphere.
    pub fn sphere_dim(&self) -> usize {
        if self.subsphere_normal.is_some() {
            self.dim - 1
        } else {
            self.dim
        }
    }

    /// Total spherical measure `omega_k` of the sampled sphere.
    pub fn total_mass(&self) -> f64 {
        omega(self.sphere_dim())
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 || self.dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if let Some(v) = &self.subsphere_normal {
            v.require_dim(self.dim)?;
            v.require_unit()?;
            if self.dim < 3 {
                return Err(Error::SubsphereDimension(self.dim));
            }
        }
        match self.method {
            Method::MonteCarloAntithetic => {
                if self.count < 4 || !self.count.is_multiple_of(2) {
                    return Err(Error::Sampler(format!(
                        "antithetic sampling needs an even count of at least 4, got {}",
                        self.count
                    )));
                }
            }
            Method::CircleGrid => {
                if self.sphere_dim() != 2 {
                    return Err(Error::Sampler(format!(
                        "the circle grid needs a circle, got a sphere in dimension {}",
                        self.sphere_dim()
                    )));
                }
                if self.count == 0 {
                    return Err(Error::Sampler(
                        "the circle grid needs at least one node".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn frame(&self) -> Result<Option<Vec<VecN>>> {
        self.subsphere_normal
            .as_ref()
            .map(orthonormal_complement)
            .transpose()
    }

    fn embed(frame: &Option<Vec<VecN>>, local: &[f64]) -> VecN {
        match frame {
            None => VecN::from_slice(local),
            Some(basis) => {
                let mut x = VecN::zeros(basis[0].dim());
                for (c, b) in local.iter().zip(basis) {
                    x = x.axpy(*c, b);
                }
                x
            }
        }
    }

    /// The `i`-th Monte Carlo direction; its antipode is the paired sample.
    pub fn monte_carlo_direction(&self, i: usize) -> Result<VecN> {
        let frame = self.frame()?;
        let base = ChaCha8Rng::seed_from_u64(self.seed);
        Ok(self.mc_direction(&base, &frame, i))
    }

    fn mc_direction(&self, base: &ChaCha8Rng, frame: &Option<Vec<VecN>>, i: usize) -> VecN {
        let k = self.sphere_dim();
        let mut rng = base.clone();
        rng.set_stream(i as u64);
        let mut g = [0.0; MAX_DIM];
        loop {
            for c in g.iter_mut().take(k) {
                *c = StandardNormal.sample(&mut rng);
            }
            let norm = g[..k].iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-150 {
                g[..k].iter_mut().for_each(|c| *c /= norm);
                return Self::embed(frame, &g[..k]);
            }
        }
    }

    /// The `k`-th circle-grid node, at angle `2 pi (k + 1/2) / count`.
    pub fn grid_direction(&self, k: usize) -> Result<VecN> {
        let frame = self.frame()?;
        Ok(self.grid_node(&frame, k))
    }

    fn grid_node(&self, frame: &Option<Vec<VecN>>, k: usize) -> VecN {
        let theta = 2.0 * PI * (k as f64 + 0.5) / self.count as f64;
        let (s, c) = theta.sin_cos();
        Self::embed(frame, &[c, s])
    }

    /// All directions in evaluation order, antipodes included.
    pub fn directions(&self) -> Result<Vec<VecN>> {
        self.validate()?;
        let frame = self.frame()?;
        Ok(match self.method {
            Method::MonteCarloAntithetic => {
                let base = ChaCha8Rng::seed_from_u64(self.seed);
                (0..self.count / 2)
                    .flat_map(|i| {
                        let u = self.mc_direction(&base, &frame, i);
                        [u, -u]
                    })
                    .collect()
            }
            Method::CircleGrid => (0..self.count).map(|k| self.grid_node(&frame, k)).collect(),
        })
    }
}

/// Sampler over the great subsphere `S^{n-1} ∩ v^perp`, embedded in `R^n`.
pub fn subsphere_sampler(
    v: &VecN,
    method: Method,
    count: usize,
    seed: u64,
) -> Result<SphereSampler> {
    let s = SphereSampler {
        dim: v.dim(),
        method,
        count,
        seed,
        subsphere_normal: Some(*v),
    };
    s.validate()?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: SymTensor,
    /// Componentwise standard error; zero for the circle grid.
    pub std_error: SymTensor,
    pub samples_used: usize,
}

// Running mean and sum of squared deviations per component.
struct Stats {
    count: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
    shape: (usize, usize),
}

impl Stats {
    fn push(&mut self, x: &SymTensor) {
        self.count += 1;
        let k = self.count as f64;
        for ((m, s), &xi) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(x.coeffs()) {
            let d = xi - *m;
            *m += d / k;
            *s += d * (xi - *m);
        }
    }

    fn merge(mut self, other: Stats) -> Result<Stats> {
        if self.count == 0 {
            return Ok(other);
        }
        if other.count == 0 {
            return Ok(self);
        }
        check_shape(self.shape, other.shape)?;
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let d = other.mean[i] - self.mean[i];
            self.mean[i] += d * nb / n;
            self.m2[i] += other.m2[i] + d * d * na * nb / n;
        }
        self.count += other.count;
        Ok(self)
    }
}

fn check_shape(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a != b {
        return Err(Error::Invalid(format!(
            "integrand changed shape from rank {} dim {} to rank {} dim {}",
            a.0, a.1, b.0, b.1
        )));
    }
    Ok(())
}

fn require_finite(x: &SymTensor, u: &VecN) -> Result<()> {
    if x.coeffs().iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteIntegrand(u.to_vec()))
    }
}

/// `∫ f(u) du` over the sampler's sphere.
///
/// Monte Carlo: `omega * mean` over antipodal pairs, each pair averaged into a
/// single draw for the standard error. Circle grid: `2 pi / count * sum`.
pub fn integrate<F>(sampler: &SphereSampler, symmetry: Symmetry, integrand: F) -> Result<Estimate>
where
    F: Fn(&VecN) -> Result<SymTensor> + Sync,
{
    sampler.validate()?;
    let frame = sampler.frame()?;
    let base = ChaCha8Rng::seed_from_u64(sampler.seed);
    let even = symmetry == Symmetry::Even;

    let units = match sampler.method {
        Method::MonteCarloAntithetic => sampler.count / 2,
        Method::CircleGrid if even && sampler.count.is_multiple_of(2) => sampler.count / 2,
        Method::CircleGrid => sampler.count,
    };
    let unit_value = |i: usize| -> Result<SymTensor> {
        let u = match sampler.method {
            Method::MonteCarloAntithetic => sampler.mc_direction(&base, &frame, i),
            Method::CircleGrid => sampler.grid_node(&frame, i),
        };
        let fu = integrand(&u)?;
        require_finite(&fu, &u)?;
        if sampler.method == Method::CircleGrid || even {
            return Ok(fu);
        }
        let w = -u;
        let fw = integrand(&w)?;
        require_finite(&fw, &w)?;
        check_shape((fu.rank(), fu.dim()), (fw.rank(), fw.dim()))?;
        Ok(fu.add(&fw)?.scale(0.5))
    };

    let chunks: Vec<Stats> = (0..units.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut stats: Option<Stats> = None;
            for i in c * CHUNK..((c + 1) * CHUNK).min(units) {
                let x = unit_value(i)?;
                let st = stats.get_or_insert_with(|| Stats {
                    count: 0,
                    mean: vec![0.0; x.coeffs().len()],
                    m2: vec![0.0; x.coeffs().len()],
                    shape: (x.rank(), x.dim()),
                });
                check_shape(st.shape, (x.rank(), x.dim()))?;
                st.push(&x);
            }
            Ok(stats.expect("chunks are nonempty"))
        })
        .collect::<Result<_>>()?;

    let mut chunks = chunks.into_iter();
    let mut total = chunks.next().expect("at least one chunk");
    for c in chunks {
        total = total.merge(c)?;
    }

    let (rank, dim) = total.shape;
    let mass = sampler.total_mass();
    let n = total.count as f64;
    let value: Vec<f64> = total.mean.iter().map(|m| mass * m).collect();
    let se: Vec<f64> = match sampler.method {
        Method::MonteCarloAntithetic => total
            .m2
            .iter()
            .map(|s| mass * (s / (n - 1.0) / n).sqrt())
            .collect(),
        Method::CircleGrid => vec![0.0; value.len()],
    };
    Ok(Estimate {
        value: SymTensor::from_coeffs(rank, dim, value)?,
        std_error: SymTensor::from_coeffs(rank, dim, se)?,
        samples_used: sampler.count,
    })
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(
    sampler: &SphereSampler,
    symmetry: Symmetry,
    integrand: F,
) -> Result<Estimate>
where
    F: Fn(&VecN) -> Result<f64> + Sync,
{
    integrate(sampler, symmetry, |u| {
        Ok(SymTensor::scalar(u.dim(), integrand(u)?))
    })
}

/// Closed form of `∫ |<v,u>| u^2 du = (2 kappa_{n-1} / (n+1)) (v^2 + Q)`.
pub fn absmoment_tensor(v: &VecN) -> Result<SymTensor> {
    v.require_unit()?;
    let n = v.dim();
    let c = 2.0 * crate::tensor::kappa(n - 1) / (n as f64 + 1.0);
    Ok(crate::tensor::sym_power(v, 2)?
        .add(&crate::tensor::metric_tensor(n)?)?
        .scale(c))
}
