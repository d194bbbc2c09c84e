//! One-dimensional quadrature for the radial factors of the spherical slicing
//! `du = (1 - tau^2)^{(n-3)/2} dtau dw`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `∫_a^b f` by the adaptive double-exponential (tanh-sinh) rule.
///
/// The rule tolerates integrable endpoint singularities only as far as the
/// integrand can be evaluated accurately next to the endpoint; factors such
/// as `(1 - t^2)^{-1/2}` should be removed by a substitution first.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, tol: f64) -> Result<LineEstimate>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && tol > 0.0) {
        return Err(Error::Invalid(format!(
            "bad interval [{a}, {b}] or tolerance {tol}"
        )));
    }
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if !out.integral.is_finite() {
        return Err(Error::NonFiniteIntegrand(vec![a, b]));
    }
    Ok(LineEstimate {
        value: out.integral,
        error_estimate: out.error_estimate,
        evaluations: out.num_function_evaluations as usize,
    })
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

/// `∫_{-1}^{1} |tau| tau^2 (1 - tau^2)^{(n-3)/2} dtau`, whose closed form is `4/(n^2 - 1)`.
///
/// Evaluated as `2 ∫_0^{pi/2} sin^3 t cos^{n-2} t dt` (`tau = sin t`), which is
/// smooth even for `n = 2`.
pub fn beta_moment_cubic(n: usize) -> Result<LineEstimate> {
    check_dim(n)?;
    let e = n as i32 - 2;
    integrate_interval(
        |t| 2.0 * t.sin().powi(3) * t.cos().powi(e),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-14,
    )
}

/// `∫_{-1}^{1} |tau| (1 - tau^2)^{(n-1)/2} dtau`, whose closed form is `2/(n + 1)`.
pub fn beta_moment_linear(n: usize) -> Result<LineEstimate> {
    check_dim(n)?;
    let e = n as i32;
    integrate_interval(
        |t| 2.0 * t.sin() * t.cos().powi(e),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-14,
    )
}
