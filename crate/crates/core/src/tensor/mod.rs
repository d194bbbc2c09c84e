//! Vectors, symmetric tensors and unit-ball constants.

mod sym;
mod vector;

pub use sym::{metric_tensor, multi_indices, sym_power, SymTensor};
pub use vector::VecN;

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 5;

/// Largest supported tensor rank.
pub const MAX_RANK: usize = 4;

/// Volume of the `k`-dimensional unit ball.
pub fn kappa(k: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let m = k / 2;
    let fact = |j: usize| (1..=j).fold(1.0, |a, i| a * i as f64);
    if k.is_multiple_of(2) {
        pi.powi(m as i32) / fact(m)
    } else {
        // 2^k m! pi^m / k!  with k = 2m + 1
        2f64.powi(k as i32) * fact(m) * pi.powi(m as i32) / fact(k)
    }
}

/// Surface area of the unit sphere in `R^k`, `omega_k = k * kappa_k`.
pub fn omega(k: usize) -> f64 {
    k as f64 * kappa(k)
}

/// Signed-index variant of [`kappa`] for callers holding untrusted integers.
pub fn kappa_checked(k: i64) -> Result<f64> {
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    Ok(kappa(k as usize))
}
