use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MAX_DIM;
use crate::error::{Error, Result};

/// A point or direction in `R^n`, `1 <= n <= MAX_DIM`, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct VecN {
    dim: usize,
    c: [f64; MAX_DIM],
}

impl VecN {
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = coords.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(coords);
        Ok(Self { dim, c })
    }

    /// Unchecked constructor for internal hot paths.
    pub(crate) fn from_slice(coords: &[f64]) -> Self {
        debug_assert!(!coords.is_empty() && coords.len() <= MAX_DIM);
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Self {
            dim: coords.len(),
            c,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        Self {
            dim,
            c: [0.0; MAX_DIM],
        }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[i] = 1.0;
        v
    }

    pub fn splat(dim: usize, x: f64) -> Self {
        let mut v = Self::zeros(dim);
        v.c[..dim].iter_mut().for_each(|c| *c = x);
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.c[..self.dim]
    }

    #[inline]
    pub fn dot(&self, other: &VecN) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut s = 0.0;
        for i in 0..self.dim {
            s += self.c[i] * other.c[i];
        }
        s
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn normalized(&self) -> Result<VecN> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(*self * (1.0 / n))
    }

    /// Checks that `self` is a unit vector to within `1e-12`.
    pub fn require_unit(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit(n));
        }
        Ok(())
    }

    pub fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.as_slice().to_vec()
    }

    /// `self + s * other`
    #[inline]
    pub fn axpy(&self, s: f64, other: &VecN) -> VecN {
        let mut out = *self;
        for i in 0..self.dim {
            out.c[i] += s * other.c[i];
        }
        out
    }
}

impl fmt::Debug for VecN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for VecN {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for VecN {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.as_mut_slice()[i]
    }
}

impl Add for VecN {
    type Output = VecN;
    #[inline]
    fn add(mut self, rhs: VecN) -> VecN {
        self += rhs;
        self
    }
}

impl AddAssign for VecN {
    #[inline]
    fn add_assign(&mut self, rhs: VecN) {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.c[i] += rhs.c[i];
        }
    }
}

impl Sub for VecN {
    type Output = VecN;
    #[inline]
    fn sub(mut self, rhs: VecN) -> VecN {
        self -= rhs;
        self
    }
}

impl SubAssign for VecN {
    #[inline]
    fn sub_assign(&mut self, rhs: VecN) {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.c[i] -= rhs.c[i];
        }
    }
}

impl Mul<f64> for VecN {
    type Output = VecN;
    #[inline]
    fn mul(mut self, s: f64) -> VecN {
        for i in 0..self.dim {
            self.c[i] *= s;
        }
        self
    }
}

impl Neg for VecN {
    type Output = VecN;
    #[inline]
    fn neg(self) -> VecN {
        self * -1.0
    }
}

impl Serialize for VecN {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VecN {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        VecN::new(&v).map_err(serde::de::Error::custom)
    }
}
