use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{VecN, MAX_DIM, MAX_RANK};
use crate::error::{Error, Result};

/// Number of sorted multi-indices of length `len` with entries drawn from `k` values.
fn orbit_count(k: usize, len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    // C(k + len - 1, len)
    let mut c: usize = 1;
    for i in 0..len {
        c = c * (k + i) / (i + 1);
    }
    c
}

/// Position of a sorted multi-index in the lexicographic enumeration.
fn lex_rank(idx: &[usize], dim: usize) -> usize {
    let r = idx.len();
    let mut rank = 0;
    let mut prev = 0;
    for (p, &i) in idx.iter().enumerate() {
        let rem = r - p - 1;
        for v in prev..i {
            rank += orbit_count(dim - v, rem);
        }
        prev = i;
    }
    rank
}

/// Sorted multi-indices `i_1 <= ... <= i_r` over `0..dim`, in lexicographic order.
pub fn multi_indices(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(orbit_count(dim, rank));
    let mut cur = vec![0usize; rank];
    fn rec(dim: usize, pos: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur[pos] = v;
            rec(dim, pos + 1, v, cur, out);
        }
    }
    rec(dim, 0, 0, &mut cur, &mut out);
    out
}

/// Symmetric `r`-tensor over `R^n`.
///
/// One coefficient is kept per permutation orbit of index tuples, in the
/// lexicographic order of sorted multi-indices. The coefficient is the
/// tensor component `T_{i_1...i_r}`, so `x^r` has coefficient `x_{i_1}...x_{i_r}`.
#[derive(Clone, PartialEq)]
pub struct SymTensor {
    rank: usize,
    dim: usize,
    coeffs: Vec<f64>,
}

impl SymTensor {
    pub fn zeros(rank: usize, dim: usize) -> Result<Self> {
        check_shape(rank, dim)?;
        Ok(Self {
            rank,
            dim,
            coeffs: vec![0.0; orbit_count(dim, rank)],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        Self {
            rank: 0,
            dim,
            coeffs: vec![value],
        }
    }

    pub fn from_vector(v: &VecN) -> Self {
        Self {
            rank: 1,
            dim: v.dim(),
            coeffs: v.to_vec(),
        }
    }

    /// Builds a tensor from its coefficient vector in canonical order.
    pub fn from_coeffs(rank: usize, dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_shape(rank, dim)?;
        let expected = orbit_count(dim, rank);
        if coeffs.len() != expected {
            return Err(Error::Invalid(format!(
                "expected {expected} coefficients for rank {rank} in dimension {dim}, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { rank, dim, coeffs })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Value of a rank-0 tensor.
    pub fn value(&self) -> Option<f64> {
        (self.rank == 0).then(|| self.coeffs[0])
    }

    pub fn to_vector(&self) -> Option<VecN> {
        (self.rank == 1).then(|| VecN::from_slice(&self.coeffs))
    }

    /// Multi-index / coefficient pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        multi_indices(self.dim, self.rank)
            .into_iter()
            .zip(self.coeffs.iter().copied())
    }

    fn offset(&self, idx: &[usize]) -> usize {
        let mut sorted = [0usize; MAX_RANK];
        let s = &mut sorted[..idx.len()];
        s.copy_from_slice(idx);
        s.sort_unstable();
        lex_rank(s, self.dim)
    }

    /// Component at a (not necessarily sorted) 0-based index tuple.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.rank, "index length must equal the rank");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        self.coeffs[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        assert_eq!(idx.len(), self.rank, "index length must equal the rank");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        let o = self.offset(idx);
        self.coeffs[o] = value;
    }

    fn require_same_shape(&self, other: &SymTensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.rank != other.rank {
            return Err(Error::Invalid(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &SymTensor) -> Result<SymTensor> {
        self.axpy(-1.0, other)
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &SymTensor) -> Result<SymTensor> {
        self.require_same_shape(other)?;
        let mut out = self.clone();
        out.coeffs
            .iter_mut()
            .zip(&other.coeffs)
            .for_each(|(a, b)| *a += s * b);
        Ok(out)
    }

    pub(crate) fn add_scaled_in_place(&mut self, s: f64, other: &SymTensor) {
        debug_assert!(self.require_same_shape(other).is_ok());
        self.coeffs
            .iter_mut()
            .zip(&other.coeffs)
            .for_each(|(a, b)| *a += s * b);
    }

    pub fn scale(&self, s: f64) -> SymTensor {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|a| *a *= s);
        out
    }

    /// `sum_k w_k T_k`; all terms must share rank and dimension.
    pub fn linear_combination(terms: &[(f64, &SymTensor)]) -> Result<SymTensor> {
        let (first, rest) = terms
            .split_first()
            .ok_or_else(|| Error::Invalid("empty linear combination".into()))?;
        let mut out = first.1.scale(first.0);
        for (w, t) in rest {
            out.require_same_shape(t)?;
            out.add_scaled_in_place(*w, t);
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest componentwise difference; shapes must agree.
    pub fn max_abs_diff(&self, other: &SymTensor) -> Result<f64> {
        self.require_same_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Evaluates the multilinear form at `args` (one vector per slot).
    pub fn eval(&self, args: &[VecN]) -> Result<f64> {
        if args.len() != self.rank {
            return Err(Error::Invalid(format!(
                "rank-{} tensor evaluated at {} vectors",
                self.rank,
                args.len()
            )));
        }
        for a in args {
            a.require_dim(self.dim)?;
        }
        if self.rank == 0 {
            return Ok(self.coeffs[0]);
        }
        let mut tuple = [0usize; MAX_RANK];
        let tuple = &mut tuple[..self.rank];
        let mut total = 0.0;
        loop {
            let mut w = 1.0;
            for (p, &i) in tuple.iter().enumerate() {
                w *= args[p][i];
            }
            if w != 0.0 {
                total += w * self.coeffs[self.offset(tuple)];
            }
            // odometer over [0, dim)^rank
            let mut p = 0;
            loop {
                tuple[p] += 1;
                if tuple[p] < self.dim {
                    break;
                }
                tuple[p] = 0;
                p += 1;
                if p == self.rank {
                    return Ok(total);
                }
            }
        }
    }

    /// The rank-(r-1) tensor `(a_1..a_{r-1}) -> T(t, a_1, ..., a_{r-1})`.
    pub fn contract(&self, t: &VecN) -> Result<SymTensor> {
        if self.rank == 0 {
            return Err(Error::RankTooSmall(1));
        }
        t.require_dim(self.dim)?;
        let mut out = SymTensor::zeros(self.rank - 1, self.dim)?;
        let mut full = [0usize; MAX_RANK];
        for (k, idx) in multi_indices(self.dim, self.rank - 1)
            .into_iter()
            .enumerate()
        {
            let mut s = 0.0;
            for i in 0..self.dim {
                full[0] = i;
                full[1..self.rank].copy_from_slice(&idx);
                s += t[i] * self.get(&full[..self.rank]);
            }
            out.coeffs[k] = s;
        }
        Ok(out)
    }

    /// Symmetric tensor product: the symmetrization of `self (x) other`.
    pub fn sym_product(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let (r, s) = (self.rank, other.rank);
        let total = r + s;
        let mut out = SymTensor::zeros(total, self.dim)?;
        let masks: Vec<u32> = (0u32..(1 << total))
            .filter(|m| m.count_ones() as usize == r)
            .collect();
        let norm = 1.0 / masks.len() as f64;
        let mut left = [0usize; MAX_RANK];
        let mut right = [0usize; MAX_RANK];
        for (k, idx) in multi_indices(self.dim, total).into_iter().enumerate() {
            let mut acc = 0.0;
            for &m in &masks {
                let (mut nl, mut nr) = (0, 0);
                for (p, &i) in idx.iter().enumerate() {
                    if m & (1 << p) != 0 {
                        left[nl] = i;
                        nl += 1;
                    } else {
                        right[nr] = i;
                        nr += 1;
                    }
                }
                acc += self.get(&left[..nl]) * other.get(&right[..nr]);
            }
            out.coeffs[k] = acc * norm;
        }
        Ok(out)
    }
}

fn check_shape(rank: usize, dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    if rank > MAX_RANK {
        return Err(Error::RankOverflow {
            rank,
            max: MAX_RANK,
        });
    }
    Ok(())
}

/// `x^r`, coefficient `x_{i_1} ... x_{i_r}` at each sorted multi-index.
pub fn sym_power(x: &VecN, r: usize) -> Result<SymTensor> {
    check_shape(r, x.dim())?;
    let n = x.dim();
    let mut coeffs = Vec::with_capacity(orbit_count(n, r));
    fn rec(x: &VecN, left: usize, start: usize, acc: f64, out: &mut Vec<f64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for v in start..x.dim() {
            rec(x, left - 1, v, acc * x[v], out);
        }
    }
    rec(x, r, 0, 1.0, &mut coeffs);
    Ok(SymTensor {
        rank: r,
        dim: n,
        coeffs,
    })
}

/// The metric tensor `Q(x, y) = <x, y>`.
pub fn metric_tensor(n: usize) -> Result<SymTensor> {
    let mut q = SymTensor::zeros(2, n)?;
    for i in 0..n {
        q.set(&[i, i], 1.0);
    }
    Ok(q)
}

impl fmt::Debug for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymTensor(rank={}, dim={}, {:?})",
            self.rank, self.dim, self.coeffs
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    rank: usize,
    dim: usize,
    coeffs: Vec<(Vec<usize>, f64)>,
}

// JSON indices are 1-based.
impl Serialize for SymTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .entries()
            .map(|(idx, v)| (idx.into_iter().map(|i| i + 1).collect(), v))
            .collect();
        TensorJson {
            rank: self.rank,
            dim: self.dim,
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        let mut t = SymTensor::zeros(raw.rank, raw.dim).map_err(D::Error::custom)?;
        let mut seen = vec![false; t.coeffs.len()];
        for (idx, v) in raw.coeffs {
            if idx.len() != raw.rank || idx.iter().any(|&i| i == 0 || i > raw.dim) {
                return Err(D::Error::custom(format!("bad multi-index {idx:?}")));
            }
            if !v.is_finite() {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            let o = t.offset(&zero_based);
            if std::mem::replace(&mut seen[o], true) {
                return Err(D::Error::custom(format!("duplicate multi-index {idx:?}")));
            }
            t.coeffs[o] = v;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> VecN {
        VecN::new(c).unwrap()
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for dim in 1..=5 {
            for rank in 0..=4 {
                let all = multi_indices(dim, rank);
                assert_eq!(all.len(), orbit_count(dim, rank));
                for (k, idx) in all.iter().enumerate() {
                    assert_eq!(lex_rank(idx, dim), k);
                }
            }
        }
    }

    #[test]
    fn sym_power_examples() {
        let t = sym_power(&VecN::unit(2, 0), 2).unwrap();
        assert_eq!(t.coeffs(), &[1.0, 0.0, 0.0]);
        let ones = v(&[1.0, 1.0]);
        assert_eq!(sym_power(&ones, 1).unwrap().to_vector().unwrap(), ones);
        assert_eq!(
            sym_power(&v(&[2.0, 3.0, 5.0]), 0).unwrap().value(),
            Some(1.0)
        );
        assert_eq!(
            sym_power(&ones, 5).unwrap_err(),
            Error::RankOverflow {
                rank: 5,
                max: MAX_RANK
            }
        );
    }

    #[test]
    fn metric_examples() {
        let q = metric_tensor(2).unwrap();
        assert_eq!(q.coeffs(), &[1.0, 0.0, 1.0]);
        assert_eq!(q.eval(&[VecN::unit(2, 0), VecN::unit(2, 1)]).unwrap(), 0.0);
        let x = v(&[3.0, 4.0]);
        assert_eq!(q.eval(&[x, x]).unwrap(), 25.0);
    }

    #[test]
    fn contract_examples() {
        let t = v(&[0.5, -1.0, 2.0]);
        let q = metric_tensor(3).unwrap();
        assert_eq!(q.contract(&t).unwrap().to_vector().unwrap(), t);

        let a = v(&[1.0, 2.0, -1.0]);
        let c = sym_power(&a, 2)
            .unwrap()
            .contract(&t)
            .unwrap()
            .to_vector()
            .unwrap();
        let expect = a * a.dot(&t);
        assert!((c - expect).max_abs() < 1e-15);

        let c3 = sym_power(&a, 3).unwrap().contract(&t).unwrap();
        let e3 = sym_power(&a, 2).unwrap().scale(a.dot(&t));
        assert!(c3.max_abs_diff(&e3).unwrap() < 1e-14);

        assert_eq!(
            SymTensor::scalar(3, 1.0).contract(&t).unwrap_err(),
            Error::RankTooSmall(1)
        );
        assert!(q.contract(&v(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn product_of_powers_is_a_power() {
        let x = v(&[0.3, -1.2, 2.0, 0.7]);
        let p = sym_power(&x, 1)
            .unwrap()
            .sym_product(&sym_power(&x, 2).unwrap())
            .unwrap();
        assert!(p.max_abs_diff(&sym_power(&x, 3).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn product_of_vectors_is_symmetrized() {
        let a = v(&[1.0, 0.0]);
        let b = v(&[0.0, 1.0]);
        let p = SymTensor::from_vector(&a)
            .sym_product(&SymTensor::from_vector(&b))
            .unwrap();
        assert_eq!(p.get(&[0, 1]), 0.5);
        assert_eq!(p.get(&[1, 0]), 0.5);
        assert_eq!(p.get(&[0, 0]), 0.0);
    }

    #[test]
    fn eval_uses_all_orderings() {
        // a (x) b symmetrized evaluated at (e1, e2) gives (a1 b2 + a2 b1) / 2
        let a = v(&[1.0, 2.0]);
        let b = v(&[3.0, 5.0]);
        let p = SymTensor::from_vector(&a)
            .sym_product(&SymTensor::from_vector(&b))
            .unwrap();
        let val = p.eval(&[VecN::unit(2, 0), VecN::unit(2, 1)]).unwrap();
        assert!((val - (1.0 * 5.0 + 2.0 * 3.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn json_layout() {
        let q = metric_tensor(2).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"rank":2,"dim":2,"coeffs":[[[1,1],1.0],[[1,2],0.0],[[2,2],1.0]]}"#
        );
        let back: SymTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(
            serde_json::from_str::<SymTensor>(r#"{"rank":1,"dim":2,"coeffs":[[[3],1.0]]}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<SymTensor>(
            r#"{"rank":2,"dim":2,"coeffs":[[[1,2],1.0],[[2,1],1.0]]}"#
        )
        .is_err());
    }
}
