//! Dense kernels for dimensions up to `MAX_DIM`.

use crate::tensor::{VecN, MAX_DIM};

/// Determinant of the `k x k` matrix whose rows are `rows`.
pub(crate) fn det(rows: &[[f64; MAX_DIM]], k: usize) -> f64 {
    let mut a = [[0.0; MAX_DIM]; MAX_DIM];
    a[..k].copy_from_slice(&rows[..k]);
    let mut d = 1.0;
    for col in 0..k {
        let mut piv = col;
        for r in col + 1..k {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        for r in col + 1..k {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                let pivot = a[col];
                for (x, p) in a[r][col..k].iter_mut().zip(&pivot[col..k]) {
                    *x -= f * p;
                }
            }
        }
    }
    d
}

/// Generalized cross product of `n - 1` vectors in `R^n`.
///
/// The result is orthogonal to every input and its norm is the
/// `(n-1)`-volume of the parallelotope they span.
pub(crate) fn cross(vs: &[VecN], n: usize) -> VecN {
    debug_assert_eq!(vs.len() + 1, n);
    let mut out = VecN::zeros(n);
    if n == 1 {
        out[0] = 1.0;
        return out;
    }
    let mut minor = [[0.0; MAX_DIM]; MAX_DIM];
    for skip in 0..n {
        for (r, v) in vs.iter().enumerate() {
            let mut c = 0;
            for j in 0..n {
                if j != skip {
                    minor[r][c] = v[j];
                    c += 1;
                }
            }
        }
        let sign = if (skip + n - 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        out[skip] = sign * det(&minor, n - 1);
    }
    out
}

/// Square root of the Gram determinant of `vs`: the volume of the spanned parallelotope.
#[cfg(test)]
pub(crate) fn gram_volume(vs: &[VecN]) -> f64 {
    let k = vs.len();
    if k == 0 {
        return 1.0;
    }
    let mut g = [[0.0; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for j in i..k {
            let d = vs[i].dot(&vs[j]);
            g[i][j] = d;
            g[j][i] = d;
        }
    }
    det(&g, k).max(0.0).sqrt()
}

/// Greedy Gram-Schmidt with pivoting: numerical rank of `vs` at relative tolerance `tol`.
pub(crate) fn rank(vs: &[VecN], tol: f64) -> usize {
    let mut rest: Vec<VecN> = vs.to_vec();
    let scale = vs.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    if scale == 0.0 {
        return 0;
    }
    let mut r = 0;
    while !rest.is_empty() {
        let (best, norm) = rest
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if norm <= tol * scale {
            break;
        }
        let q = rest.swap_remove(best) * (1.0 / norm);
        for v in rest.iter_mut() {
            let c = v.dot(&q);
            *v = v.axpy(-c, &q);
        }
        r += 1;
    }
    r
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}
