//! Verification reports that pair an exact facet-sum functional with an
//! independent quadrature over directions, plus a suite runner.

mod checks;
mod suite;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::SphereSampler;
use crate::tensor::SymTensor;

pub use checks::*;
pub use suite::{format_table, run_suite, SuiteConfig};

/// Version of the report JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Number of standard errors a Monte Carlo estimate may deviate by.
pub const SIGMA_FACTOR: f64 = 3.0;

/// Absolute slack added to every relative tolerance, for near-zero components.
pub const ABS_FLOOR: f64 = 1e-9;

/// Default relative tolerance for Monte Carlo checks.
pub const MC_TOLERANCE: f64 = 1e-3;

/// Default relative tolerance for circle-grid checks.
pub const GRID_TOLERANCE: f64 = 1e-5;

/// Default tolerance for the exact directional-derivative comparison.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-8;

/// The identity families that can be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// Surface area as the mean shadow volume.
    Cauchy,
    /// Integrated shadow moment vectors against `q_1` and `Upsilon_1`.
    VectorCauchy,
    /// The mixed version for `n` different bodies.
    MixedVectorCauchy,
    /// `∫ |<v,u>| u^2 du` in closed form.
    AbsMoment,
    /// Integrated upper-boundary functionals `F_f` against boundary integrals.
    ShadowIntegral,
    /// `F_x(K,u)` against the derivative of `z_{n+1}` along `[o,u]`.
    DirectionalDerivative,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Cauchy,
        Identity::VectorCauchy,
        Identity::MixedVectorCauchy,
        Identity::AbsMoment,
        Identity::ShadowIntegral,
        Identity::DirectionalDerivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Cauchy => "cauchy",
            Identity::VectorCauchy => "vector-cauchy",
            Identity::MixedVectorCauchy => "mixed-vector-cauchy",
            Identity::AbsMoment => "abs-moment",
            Identity::ShadowIntegral => "shadow-integral",
            Identity::DirectionalDerivative => "directional-derivative",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "identity",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub identity: Identity,
    /// Human-readable description of the bodies and parameters.
    pub body_spec: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SphereSampler>,
    pub lhs: SymTensor,
    pub lhs_std_error: SymTensor,
    pub rhs: SymTensor,
    pub abs_diff: SymTensor,
    pub rel_diff: SymTensor,
    /// `max |rhs|`, the reference magnitude for relative tolerances.
    pub scale: f64,
    pub tolerance_used: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl VerifyReport {
    /// Compares `lhs` against `rhs`; a component passes iff
    /// `|lhs - rhs| <= max(3 se, tol * max|rhs| + ABS_FLOOR)`.
    #[allow(clippy::too_many_arguments)]
    pub fn compare(
        identity: Identity,
        body_spec: impl Into<String>,
        sampler: Option<SphereSampler>,
        lhs: SymTensor,
        lhs_std_error: SymTensor,
        rhs: SymTensor,
        tolerance: f64,
        started: Instant,
    ) -> Result<Self> {
        let abs_diff = lhs.sub(&rhs)?;
        let abs_diff = SymTensor::from_coeffs(
            abs_diff.rank(),
            abs_diff.dim(),
            abs_diff.coeffs().iter().map(|d| d.abs()).collect(),
        )?;
        let scale = rhs.max_abs();
        let rel: Vec<f64> = abs_diff
            .coeffs()
            .iter()
            .map(|d| d / scale.max(ABS_FLOOR))
            .collect();
        let rel_diff = SymTensor::from_coeffs(abs_diff.rank(), abs_diff.dim(), rel)?;
        let pass = component_pass(&abs_diff, &lhs_std_error, scale, tolerance)?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            identity,
            body_spec: body_spec.into(),
            dim: rhs.dim(),
            sampler,
            lhs,
            lhs_std_error,
            rhs,
            abs_diff,
            rel_diff,
            scale,
            tolerance_used: tolerance,
            pass,
            runtime_ms: started.elapsed().as_millis() as u64,
        })
    }

    /// Largest `|lhs - rhs|` over components.
    pub fn max_abs_diff(&self) -> f64 {
        self.abs_diff.max_abs()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn component_pass(abs_diff: &SymTensor, se: &SymTensor, scale: f64, tol: f64) -> Result<bool> {
    if se.coeffs().len() != abs_diff.coeffs().len() {
        return Err(Error::DimensionMismatch {
            expected: abs_diff.coeffs().len(),
            found: se.coeffs().len(),
        });
    }
    let floor = tol * scale + ABS_FLOOR;
    Ok(abs_diff
        .coeffs()
        .iter()
        .zip(se.coeffs())
        .all(|(d, s)| d.is_finite() && *d <= (SIGMA_FACTOR * s).max(floor)))
}
