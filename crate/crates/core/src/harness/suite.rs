use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::{Identity, VerifyReport};
use crate::error::{Error, Result};
use crate::polytope::{generators::body_from_spec, PolytopeBody};
use crate::quadrature::{Method, SphereSampler, DEFAULT_GRID_NODES};
use crate::tensor::VecN;
use crate::valuations::PolyField;

/// What [`run_suite`] checks and how.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub identities: Vec<Identity>,
    /// Body descriptions as accepted by `generators::body_from_spec`.
    pub bodies: Vec<String>,
    pub dims: Vec<usize>,
    /// Monte Carlo sample count (directions, antipodes included).
    pub samples: usize,
    pub seed: u64,
    /// Forces a quadrature method; by default the plane uses the circle grid.
    pub method: Option<Method>,
    pub grid_nodes: usize,
    /// Overrides the default relative tolerance of every check.
    pub tolerance: Option<f64>,
    /// Number of directions for the directional-derivative check.
    pub directions: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            identities: Identity::ALL.to_vec(),
            bodies: [
                "cube",
                "simplex",
                "cross_polytope",
                "random:1",
                "random:2",
                "random:3",
            ]
            .map(String::from)
            .to_vec(),
            dims: vec![2, 3],
            samples: 100_000,
            seed: 42,
            method: None,
            grid_nodes: DEFAULT_GRID_NODES,
            tolerance: None,
            directions: 20,
        }
    }
}

impl SuiteConfig {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn sampler(&self, dim: usize) -> Result<SphereSampler> {
        let method = self.method.unwrap_or(if dim == 2 {
            Method::CircleGrid
        } else {
            Method::MonteCarloAntithetic
        });
        match method {
            Method::CircleGrid => SphereSampler::new(dim, method, self.grid_nodes, self.seed),
            Method::MonteCarloAntithetic => {
                SphereSampler::new(dim, method, self.samples, self.seed)
            }
        }
    }

    fn directions_for(&self, dim: usize) -> Result<Vec<VecN>> {
        // one member of each antipodal pair, so the directions are independent
        let count = (2 * self.directions).max(4);
        let dirs = SphereSampler::monte_carlo(dim, count, self.seed)?.directions()?;
        Ok(dirs.into_iter().step_by(2).take(self.directions).collect())
    }

    fn validate(&self) -> Result<()> {
        if self.identities.is_empty() || self.dims.is_empty() {
            return Err(Error::Invalid(
                "suite needs at least one identity and one dimension".into(),
            ));
        }
        if self.bodies.is_empty() && self.identities.iter().any(|i| *i != Identity::AbsMoment) {
            return Err(Error::Invalid("suite needs at least one body".into()));
        }
        if self.directions == 0 {
            return Err(Error::Invalid("suite needs at least one direction".into()));
        }
        Ok(())
    }
}

enum Task {
    Single {
        identity: Identity,
        body: usize,
        field: Option<PolyField>,
    },
    Mixed {
        bodies: Vec<usize>,
    },
    AbsMoment {
        v: VecN,
    },
}

/// Runs every configured identity on every body and dimension. Reports come
/// back in a fixed order; they are identical between runs except for timings.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerifyReport>> {
    config.validate()?;
    let mut reports = Vec::new();
    for &n in &config.dims {
        let sampler = config.sampler(n)?;
        let mut specs = config.bodies.clone();
        let mut bodies = specs
            .iter()
            .map(|s| body_from_spec(s, n))
            .collect::<Result<Vec<PolytopeBody>>>()?;
        // companions for the mixed check when the list is shorter than n
        let mut k = 0;
        while config.identities.contains(&Identity::MixedVectorCauchy)
            && !bodies.is_empty()
            && bodies.len() < n
        {
            let spec = format!("random:{}", config.seed.wrapping_add(1000 + k));
            bodies.push(body_from_spec(&spec, n)?);
            specs.push(spec);
            k += 1;
        }
        let directions = config.directions_for(n)?;

        let mut tasks = Vec::new();
        for &identity in &config.identities {
            match identity {
                Identity::AbsMoment => {
                    tasks.push(Task::AbsMoment {
                        v: VecN::unit(n, 0),
                    });
                    tasks.push(Task::AbsMoment { v: directions[0] });
                }
                Identity::MixedVectorCauchy => {
                    for i in 0..config.bodies.len() {
                        tasks.push(Task::Mixed {
                            bodies: (0..n).map(|j| (i + j) % bodies.len()).collect(),
                        });
                    }
                }
                Identity::ShadowIntegral => {
                    for body in 0..config.bodies.len() {
                        for f in PolyField::ALL {
                            tasks.push(Task::Single {
                                identity,
                                body,
                                field: Some(f),
                            });
                        }
                    }
                }
                _ => {
                    for body in 0..config.bodies.len() {
                        tasks.push(Task::Single {
                            identity,
                            body,
                            field: None,
                        });
                    }
                }
            }
        }

        let batch = tasks
            .par_iter()
            .map(|task| {
                let report = match task {
                    Task::AbsMoment { v } => check_absmoment_tensor(v, &sampler)?,
                    Task::Mixed { bodies: ids } => {
                        let list: Vec<PolytopeBody> =
                            ids.iter().map(|&i| bodies[i].clone()).collect();
                        let label = ids
                            .iter()
                            .map(|&i| specs[i].as_str())
                            .collect::<Vec<_>>()
                            .join(" + ");
                        check_mixed_vector_cauchy(&list, &sampler)?.labelled(label)
                    }
                    Task::Single {
                        identity,
                        body,
                        field,
                    } => {
                        let b = &bodies[*body];
                        let label = &specs[*body];
                        match identity {
                            Identity::Cauchy => check_cauchy(b, &sampler)?.labelled(label),
                            Identity::VectorCauchy => {
                                check_vector_cauchy(b, &sampler)?.labelled(label)
                            }
                            Identity::ShadowIntegral => {
                                let f = field.expect("field set for shadow integrals");
                                check_shadow_integral(b, f, &sampler)?
                                    .labelled(format!("{label}, f = {}", f.name()))
                            }
                            Identity::DirectionalDerivative => {
                                check_directional_derivative(b, &directions)?
                                    .labelled(format!("{label}, {} directions", directions.len()))
                            }
                            Identity::AbsMoment | Identity::MixedVectorCauchy => {
                                unreachable!("handled above")
                            }
                        }
                    }
                };
                match config.tolerance {
                    Some(t) => report.with_tolerance(t),
                    None => Ok(report),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        reports.extend(batch);
    }
    Ok(reports)
}

/// Plain-text table, one row per report.
pub fn format_table(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>3}  {:<40} {:>11} {:>11} {:>9} {:>4} {:>8}",
        "identity", "n", "bodies", "max |diff|", "max rel", "tol", "ok", "ms"
    );
    for r in reports {
        let rel = r.rel_diff.max_abs();
        let _ = writeln!(
            out,
            "{:<24} {:>3}  {:<40} {:>11.3e} {:>11.3e} {:>9.1e} {:>4} {:>8}",
            r.identity.name(),
            r.dim,
            truncate(&r.body_spec, 40),
            r.max_abs_diff(),
            rel,
            r.tolerance_used,
            if r.pass { "yes" } else { "NO" },
            r.runtime_ms
        );
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "{} reports, {} failed", reports.len(), failed);
    out
}

fn truncate(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(width - 1).collect();
        t.push('~');
        t
    }
}
