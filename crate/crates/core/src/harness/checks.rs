use std::time::Instant;

use super::{Identity, VerifyReport, DERIVATIVE_TOLERANCE, GRID_TOLERANCE, MC_TOLERANCE};
use crate::error::{Error, Result};
use crate::mixed::{
    directional_derivative_moment, mixed_moment_with_ball, mixed_projected_moment, upsilon_mixed,
};
use crate::polytope::{project, PolytopeBody};
use crate::quadrature::{
    absmoment_tensor, integrate, integrate_scalar, Method, SphereSampler, Symmetry,
};
use crate::tensor::{kappa, sym_power, SymTensor, VecN};
use crate::valuations::{
    boundary_integral, projected_moment, projected_volume, q1, shadow_functional, upsilon,
    PolyField,
};

/// Relative tolerance used when none is given: tighter for the circle grid.
pub fn default_tolerance(sampler: &SphereSampler) -> f64 {
    match sampler.method {
        Method::CircleGrid => GRID_TOLERANCE,
        Method::MonteCarloAntithetic => MC_TOLERANCE,
    }
}

fn require_dim(body: &PolytopeBody, sampler: &SphereSampler) -> Result<()> {
    if sampler.subsphere_normal.is_some() {
        return Err(Error::Invalid(
            "identity checks integrate over the full sphere".into(),
        ));
    }
    if body.dim() != sampler.dim {
        return Err(Error::DimensionMismatch {
            expected: sampler.dim,
            found: body.dim(),
        });
    }
    Ok(())
}

impl VerifyReport {
    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.body_spec = label.into();
        self
    }

    /// Re-evaluates the pass flag under another relative tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        self.pass =
            super::component_pass(&self.abs_diff, &self.lhs_std_error, self.scale, tolerance)?;
        self.tolerance_used = tolerance;
        Ok(self)
    }
}

/// `S(K) = (1/kappa_{n-1}) ∫ V_{n-1}(K|u^perp) du`.
pub fn check_cauchy(body: &PolytopeBody, sampler: &SphereSampler) -> Result<VerifyReport> {
    let started = Instant::now();
    require_dim(body, sampler)?;
    let n = body.dim();
    let est = integrate_scalar(sampler, Symmetry::Even, |u| projected_volume(body, u))?;
    let k = kappa(n - 1);
    VerifyReport::compare(
        Identity::Cauchy,
        "body",
        Some(sampler.clone()),
        est.value.scale(1.0 / k),
        est.std_error.scale(1.0 / k),
        SymTensor::scalar(n, body.surface_area()),
        default_tolerance(sampler),
        started,
    )
}

/// `∫ z_n(K|u^perp) du = (n kappa_{n-1}/(n+1)) (n q_1(K) - Upsilon_1(K))`.
pub fn check_vector_cauchy(body: &PolytopeBody, sampler: &SphereSampler) -> Result<VerifyReport> {
    let started = Instant::now();
    require_dim(body, sampler)?;
    let n = body.dim();
    let est = integrate(sampler, Symmetry::Even, |u| {
        Ok(SymTensor::from_vector(&projected_moment(body, u)?))
    })?;
    let nf = n as f64;
    let c = nf * kappa(n - 1) / (nf + 1.0);
    let rhs = (q1(body) * nf - upsilon(body, 1)?.to_vector().expect("rank 1")) * c;
    VerifyReport::compare(
        Identity::VectorCauchy,
        "body",
        Some(sampler.clone()),
        est.value,
        est.std_error,
        SymTensor::from_vector(&rhs),
        default_tolerance(sampler),
        started,
    )
}

/// `∫ z_n(K_1|u^perp, ..., K_n|u^perp) du
///   = n kappa_{n-1} (z(K_1, ..., K_n, B^n) - Upsilon^{(1)}(K_1, ..., K_n)/(n+1))`.
pub fn check_mixed_vector_cauchy(
    bodies: &[PolytopeBody],
    sampler: &SphereSampler,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let n = sampler.dim;
    if bodies.len() != n {
        return Err(Error::BodyCount {
            expected: n,
            found: bodies.len(),
        });
    }
    for b in bodies {
        require_dim(b, sampler)?;
    }
    let est = integrate(sampler, Symmetry::Even, |u| {
        let shadows = bodies
            .iter()
            .map(|b| project(b, u))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymTensor::from_vector(&mixed_projected_moment(&shadows)?))
    })?;
    let nf = n as f64;
    let rhs = (mixed_moment_with_ball(bodies)? - upsilon_mixed(bodies)? * (1.0 / (nf + 1.0)))
        * (nf * kappa(n - 1));
    VerifyReport::compare(
        Identity::MixedVectorCauchy,
        "bodies",
        Some(sampler.clone()),
        est.value,
        est.std_error,
        SymTensor::from_vector(&rhs),
        default_tolerance(sampler),
        started,
    )
}

/// `∫ |<v,u>| u^2 du = (2 kappa_{n-1}/(n+1)) (v^2 + Q)`, componentwise.
pub fn check_absmoment_tensor(v: &VecN, sampler: &SphereSampler) -> Result<VerifyReport> {
    let started = Instant::now();
    v.require_dim(sampler.dim)?;
    let rhs = absmoment_tensor(v)?;
    let est = integrate(sampler, Symmetry::Even, |u| {
        Ok(sym_power(u, 2)?.scale(v.dot(u).abs()))
    })?;
    let label = format!("v = {:?}", v.as_slice());
    VerifyReport::compare(
        Identity::AbsMoment,
        label,
        Some(sampler.clone()),
        est.value,
        est.std_error,
        rhs,
        default_tolerance(sampler),
        started,
    )
}

/// `∫ F_f(K,u) du = kappa_{n-1} ∫_{∂K} f dH^{n-1}`.
pub fn check_shadow_integral(
    body: &PolytopeBody,
    f: PolyField,
    sampler: &SphereSampler,
) -> Result<VerifyReport> {
    let started = Instant::now();
    require_dim(body, sampler)?;
    let n = body.dim();
    let est = integrate(sampler, Symmetry::General, |u| {
        shadow_functional(body, u, f)
    })?;
    let rhs = boundary_integral(body, f)?.scale(kappa(n - 1));
    VerifyReport::compare(
        Identity::ShadowIntegral,
        format!("body, f = {}", f.name()),
        Some(sampler.clone()),
        est.value,
        est.std_error,
        rhs,
        default_tolerance(sampler),
        started,
    )
}

/// `F_x(K,u)` against the derivative of `z_{n+1}(K + e[o,u])` at `e = 0`, for
/// each direction. The report shows the worst direction; it passes iff all do.
pub fn check_directional_derivative(
    body: &PolytopeBody,
    directions: &[VecN],
) -> Result<VerifyReport> {
    let started = Instant::now();
    if directions.is_empty() {
        return Err(Error::Invalid("no directions given".into()));
    }
    let n = body.dim();
    let mut worst: Option<(f64, VerifyReport)> = None;
    let mut all_pass = true;
    for u in directions {
        let lhs = shadow_functional(body, u, PolyField::Identity)?;
        let rhs = SymTensor::from_vector(&directional_derivative_moment(body, u)?);
        let r = VerifyReport::compare(
            Identity::DirectionalDerivative,
            format!("body, u = {:?}", u.as_slice()),
            None,
            lhs,
            SymTensor::zeros(1, n)?,
            rhs,
            DERIVATIVE_TOLERANCE,
            started,
        )?;
        all_pass &= r.pass;
        let badness = r.max_abs_diff() / (DERIVATIVE_TOLERANCE * r.scale + super::ABS_FLOOR);
        if worst.as_ref().is_none_or(|(b, _)| badness > *b) {
            worst = Some((badness, r));
        }
    }
    let (_, mut report) = worst.expect("at least one direction");
    report.pass = all_pass;
    report.runtime_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
