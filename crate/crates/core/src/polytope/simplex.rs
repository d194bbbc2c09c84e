//! Closed-form integrals over simplices.

#[cfg(test)]
use crate::linalg::{factorial, gram_volume};
use crate::tensor::{VecN, MAX_DIM};

/// Length of the packed upper triangle of an `n x n` symmetric matrix.
pub(crate) const fn packed_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// `int x dH^k`, `int x x^T dH^k` and the `k`-measure of a simplex or a union of simplices.
///
/// The second moment is packed in the canonical order of rank-2 multi-indices
/// `(0,0), (0,1), ..., (0,n-1), (1,1), ...`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Moments {
    pub measure: f64,
    pub first: VecN,
    pub second: [f64; packed_len(MAX_DIM)],
}

impl Moments {
    pub fn zero(dim: usize) -> Self {
        Self {
            measure: 0.0,
            first: VecN::zeros(dim),
            second: [0.0; packed_len(MAX_DIM)],
        }
    }

    pub fn accumulate(&mut self, other: &Moments) {
        self.measure += other.measure;
        self.first += other.first;
        for (a, b) in self.second.iter_mut().zip(other.second.iter()) {
            *a += b;
        }
    }

    /// Moments of the simplex with the given vertices and a known `k`-measure.
    pub fn of_simplex(verts: &[VecN], measure: f64) -> Self {
        let n = verts[0].dim();
        let m = verts.len() as f64; // k + 1
        let mut sum = VecN::zeros(n);
        for v in verts {
            sum += *v;
        }
        let mut second = [0.0; packed_len(MAX_DIM)];
        let w = measure / (m * (m + 1.0));
        let mut o = 0;
        for i in 0..n {
            for j in i..n {
                let mut s = sum[i] * sum[j];
                for v in verts {
                    s += v[i] * v[j];
                }
                second[o] = w * s;
                o += 1;
            }
        }
        Self {
            measure,
            first: sum * (measure / m),
            second,
        }
    }

    pub fn centroid(&self) -> VecN {
        self.first * (1.0 / self.measure)
    }
}

/// `k`-dimensional measure of the simplex with `k + 1` vertices.
#[cfg(test)]
pub(crate) fn simplex_measure(verts: &[VecN]) -> f64 {
    let k = verts.len() - 1;
    let edges: Vec<VecN> = verts[1..].iter().map(|v| *v - verts[0]).collect();
    gram_volume(&edges) / factorial(k)
}
