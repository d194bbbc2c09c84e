//! Convex hull triangulation of a point set.
//!
//! The boundary is returned as a list of `(n-1)`-simplices ("cells") with
//! outward unit normals. Coplanar cells are merged into facets by the caller.
//! Dimension 1 and 2 use closed forms (interval, monotone chain); higher
//! dimensions use beneath-beyond insertion where the next point is always the
//! maximizer of the current facet's linear functional over *all* points, with
//! ties broken by a fixed generic functional, so only true vertices enter the
//! triangulation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{cross, factorial};
use crate::tensor::{VecN, MAX_DIM};

/// Visibility / degeneracy threshold relative to the point-set radius.
pub(crate) const EPS_REL: f64 = 1e-10;
const TIE_REL: f64 = 1e-11;

#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub verts: [usize; MAX_DIM],
    pub normal: VecN,
    pub offset: f64,
    pub measure: f64,
}

#[derive(Clone, Debug)]
pub(crate) struct Hull {
    pub dim: usize,
    pub points: Vec<VecN>,
    pub cells: Vec<Cell>,
    pub interior: VecN,
    /// Largest distance of an input point from the input mean.
    pub radius: f64,
}

impl Hull {
    pub fn cell_points(&self, c: &Cell) -> [VecN; MAX_DIM] {
        let mut out = [VecN::zeros(self.dim); MAX_DIM];
        for (o, &v) in out.iter_mut().zip(&c.verts[..self.dim]) {
            *o = self.points[v];
        }
        out
    }
}

pub(crate) fn generic_direction(n: usize) -> VecN {
    const D: [f64; MAX_DIM] = [
        1.0,
        0.577_215_664_901_532_9,
        0.313_261_687_518_222_8,
        0.141_421_356_237_309_5,
        0.070_710_678_118_654_75,
    ];
    VecN::from_slice(&D[..n])
}

fn radius(points: &[VecN], n: usize) -> f64 {
    let mut mean = VecN::zeros(n);
    for p in points {
        mean += *p;
    }
    mean = mean * (1.0 / points.len() as f64);
    points.iter().fold(0.0f64, |m, p| m.max((*p - mean).norm()))
}

pub(crate) fn convex_hull(points: &[VecN]) -> Result<Hull> {
    let n = points
        .first()
        .ok_or(Error::Degenerate { rank: 0, dim: 0 })?
        .dim();
    for p in points {
        p.require_dim(n)?;
    }
    let r = radius(points, n);
    if r == 0.0 || points.len() < n + 1 {
        let rank = if r == 0.0 {
            0
        } else {
            points.len().saturating_sub(1).min(n - 1)
        };
        return Err(Error::Degenerate { rank, dim: n });
    }
    match n {
        1 => hull_1d(points, r),
        2 => hull_2d(points, r),
        _ => BeneathBeyond::run(points, n, r),
    }
}

fn hull_1d(points: &[VecN], r: f64) -> Result<Hull> {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    if points[hi][0] - points[lo][0] <= EPS_REL * r {
        return Err(Error::Degenerate { rank: 0, dim: 1 });
    }
    let pts = vec![points[lo], points[hi]];
    let mut a = [0; MAX_DIM];
    let mut b = [0; MAX_DIM];
    b[0] = 1;
    a[0] = 0;
    let cells = vec![
        Cell {
            verts: a,
            normal: VecN::from_slice(&[-1.0]),
            offset: -pts[0][0],
            measure: 1.0,
        },
        Cell {
            verts: b,
            normal: VecN::from_slice(&[1.0]),
            offset: pts[1][0],
            measure: 1.0,
        },
    ];
    let interior = (pts[0] + pts[1]) * 0.5;
    Ok(Hull {
        dim: 1,
        points: pts,
        cells,
        interior,
        radius: r,
    })
}

fn turn(o: &VecN, a: &VecN, b: &VecN) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull_2d(points: &[VecN], r: f64) -> Result<Hull> {
    let eps = EPS_REL * r;
    let mut pts: Vec<VecN> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let mut chain: Vec<VecN> = Vec::with_capacity(pts.len() + 1);
    // lower then upper; pop while the middle point is not strictly left of o->b
    for pass in 0..2 {
        let start = chain.len();
        let iter: Box<dyn Iterator<Item = &VecN>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while chain.len() >= start + 2 {
                let o = chain[chain.len() - 2];
                let a = chain[chain.len() - 1];
                if turn(&o, &a, p) <= eps * (*p - o).norm() {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(*p);
        }
        chain.pop();
    }
    if chain.len() < 3 {
        return Err(Error::Degenerate {
            rank: if chain.len() <= 1 { 0 } else { 1 },
            dim: 2,
        });
    }
    let m = chain.len();
    let mut cells = Vec::with_capacity(m);
    let mut interior = VecN::zeros(2);
    for i in 0..m {
        let a = chain[i];
        let b = chain[(i + 1) % m];
        let e = b - a;
        let len = e.norm();
        let normal = VecN::from_slice(&[e[1] / len, -e[0] / len]);
        let mut verts = [0; MAX_DIM];
        verts[0] = i;
        verts[1] = (i + 1) % m;
        cells.push(Cell {
            verts,
            normal,
            offset: normal.dot(&a),
            measure: len,
        });
        interior += a;
    }
    interior = interior * (1.0 / m as f64);
    Ok(Hull {
        dim: 2,
        points: chain,
        cells,
        interior,
        radius: r,
    })
}

#[derive(Clone)]
struct Facet {
    verts: [usize; MAX_DIM],
    nbr: [usize; MAX_DIM],
    normal: VecN,
    offset: f64,
    measure: f64,
    alive: bool,
}

type RidgeKey = [usize; MAX_DIM];

struct BeneathBeyond<'a> {
    n: usize,
    points: &'a [VecN],
    eps: f64,
    tie: f64,
    generic: VecN,
    interior: VecN,
    facets: Vec<Facet>,
    inserted: Vec<bool>,
    visible_stamp: Vec<usize>,
    stamp: usize,
}

impl<'a> BeneathBeyond<'a> {
    fn run(points: &'a [VecN], n: usize, r: f64) -> Result<Hull> {
        let mut bb = BeneathBeyond {
            n,
            points,
            eps: EPS_REL * r,
            tie: TIE_REL * r,
            generic: generic_direction(n),
            interior: VecN::zeros(n),
            facets: Vec::new(),
            inserted: vec![false; points.len()],
            visible_stamp: Vec::new(),
            stamp: 0,
        };
        let simplex = bb.initial_simplex()?;
        bb.seed_facets(&simplex);
        let mut queue: Vec<usize> = (0..bb.facets.len()).collect();
        while let Some(f) = queue.pop() {
            if !bb.facets[f].alive {
                continue;
            }
            let normal = bb.facets[f].normal;
            let offset = bb.facets[f].offset;
            if let Some(p) = bb.pick(|q| normal.dot(q) - offset) {
                if p.1 > bb.eps {
                    let first_new = bb.facets.len();
                    bb.insert(p.0);
                    queue.extend(first_new..bb.facets.len());
                }
            }
        }
        Ok(bb.finish(r))
    }

    /// Point maximizing `score` among points not yet inserted, ties broken generically.
    fn pick(&self, score: impl Fn(&VecN) -> f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut scores = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let s = if self.inserted[i] {
                f64::NEG_INFINITY
            } else {
                score(p)
            };
            scores.push(s);
            if best.is_none_or(|b| s > b.1) {
                best = Some((i, s));
            }
        }
        let (_, top) = best?;
        if top == f64::NEG_INFINITY {
            return None;
        }
        let mut choice = None;
        let mut key = f64::NEG_INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            if scores[i] >= top - self.tie {
                let k = self.generic.dot(p);
                if choice.is_none() || k > key {
                    choice = Some(i);
                    key = k;
                }
            }
        }
        choice.map(|i| (i, scores[i]))
    }

    fn initial_simplex(&mut self) -> Result<Vec<usize>> {
        let n = self.n;
        let g = self.generic;
        let (first, _) = self.pick(|p| g.dot(p)).expect("nonempty point set");
        self.inserted[first] = true;
        let origin = self.points[first];
        let mut chosen = vec![first];
        let mut basis: Vec<VecN> = Vec::with_capacity(n);
        for k in 1..=n {
            let residual = |p: &VecN| {
                let mut d = *p - origin;
                for b in &basis {
                    let c = d.dot(b);
                    d = d.axpy(-c, b);
                }
                d
            };
            let (idx, dist) = self.pick(|p| residual(p).norm()).ok_or(Error::Degenerate {
                rank: k - 1,
                dim: n,
            })?;
            if dist <= self.eps {
                return Err(Error::Degenerate {
                    rank: k - 1,
                    dim: n,
                });
            }
            let d = residual(&self.points[idx]);
            basis.push(d * (1.0 / d.norm()));
            self.inserted[idx] = true;
            chosen.push(idx);
        }
        Ok(chosen)
    }

    fn seed_facets(&mut self, simplex: &[usize]) {
        let n = self.n;
        let mut c = VecN::zeros(n);
        for &i in simplex {
            c += self.points[i];
        }
        self.interior = c * (1.0 / (n + 1) as f64);
        // facet i omits simplex vertex i
        for omit in 0..=n {
            let mut verts = [0; MAX_DIM];
            let mut nbr = [0; MAX_DIM];
            let mut k = 0;
            for (j, &v) in simplex.iter().enumerate() {
                if j != omit {
                    verts[k] = v;
                    nbr[k] = j;
                    k += 1;
                }
            }
            let f = self.make_facet(verts, nbr);
            self.facets.push(f);
        }
    }

    fn make_facet(&self, verts: [usize; MAX_DIM], nbr: [usize; MAX_DIM]) -> Facet {
        let n = self.n;
        let base = self.points[verts[0]];
        let mut edges = [VecN::zeros(n); MAX_DIM];
        for k in 1..n {
            edges[k - 1] = self.points[verts[k]] - base;
        }
        let mut normal = cross(&edges[..n - 1], n);
        let len = normal.norm();
        let measure = len / factorial(n - 1);
        if len > 0.0 {
            normal = normal * (1.0 / len);
        }
        let mut offset = normal.dot(&base);
        if normal.dot(&self.interior) > offset {
            normal = -normal;
            offset = -offset;
        }
        Facet {
            verts,
            nbr,
            normal,
            offset,
            measure,
            alive: true,
        }
    }

    fn insert(&mut self, pi: usize) {
        let n = self.n;
        let p = self.points[pi];
        self.inserted[pi] = true;
        self.stamp += 1;
        let stamp = self.stamp;
        self.visible_stamp.resize(self.facets.len(), 0);
        let mut visible = Vec::new();
        for (f, fa) in self.facets.iter().enumerate() {
            if fa.alive && fa.normal.dot(&p) - fa.offset > self.eps {
                self.visible_stamp[f] = stamp;
                visible.push(f);
            }
        }
        let mut pending: HashMap<RidgeKey, (usize, usize)> = HashMap::new();
        for &f in &visible {
            for i in 0..n {
                let g = self.facets[f].nbr[i];
                if self.visible_stamp[g] == stamp {
                    continue;
                }
                let mut verts = self.facets[f].verts;
                verts[i] = pi;
                let mut nbr = [usize::MAX; MAX_DIM];
                nbr[i] = g;
                let nf = self.facets.len();
                let facet = self.make_facet(verts, nbr);
                self.facets.push(facet);
                let slot = self.facets[g].nbr[..n]
                    .iter()
                    .position(|&x| x == f)
                    .expect("adjacency is symmetric");
                self.facets[g].nbr[slot] = nf;
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let mut key = [usize::MAX; MAX_DIM];
                    let mut k = 0;
                    for (m, &v) in verts[..n].iter().enumerate() {
                        if m != j {
                            key[k] = v;
                            k += 1;
                        }
                    }
                    key[..n - 1].sort_unstable();
                    if let Some((other, oj)) = pending.remove(&key) {
                        self.facets[nf].nbr[j] = other;
                        self.facets[other].nbr[oj] = nf;
                    } else {
                        pending.insert(key, (nf, j));
                    }
                }
            }
        }
        debug_assert!(pending.is_empty(), "unmatched horizon ridges");
        for f in visible {
            self.facets[f].alive = false;
        }
    }

    fn finish(self, r: f64) -> Hull {
        let n = self.n;
        let mut remap = vec![usize::MAX; self.points.len()];
        let mut points = Vec::new();
        let mut cells = Vec::new();
        for f in self.facets.iter().filter(|f| f.alive) {
            let mut verts = [0; MAX_DIM];
            for (slot, &v) in verts.iter_mut().zip(&f.verts[..n]) {
                if remap[v] == usize::MAX {
                    remap[v] = points.len();
                    points.push(self.points[v]);
                }
                *slot = remap[v];
            }
            cells.push(Cell {
                verts,
                normal: f.normal,
                offset: f.offset,
                measure: f.measure,
            });
        }
        Hull {
            dim: n,
            points,
            cells,
            interior: self.interior,
            radius: r,
        }
    }
}
