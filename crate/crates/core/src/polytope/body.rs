use serde::{Deserialize, Serialize};

use super::hull::{convex_hull, Hull, EPS_REL};
use super::simplex::{packed_len, Moments};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::tensor::{SymTensor, VecN, MAX_DIM};

/// Two cell normals belong to the same facet when their dot product exceeds this.
const MERGE_DOT: f64 = 1.0 - 1e-9;
/// Relative offset tolerance for facet merging.
const MERGE_OFFSET_REL: f64 = 1e-9;
/// Relative tolerance for the rank of incident facet normals at a vertex.
const VERTEX_RANK_TOL: f64 = 1e-7;

/// One facet of a polytope with its boundary integrals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetData {
    /// Outward unit normal.
    pub normal: VecN,
    /// `h_K(normal)`.
    pub offset: f64,
    /// `(n-1)`-volume of the facet.
    pub measure: f64,
    pub centroid: VecN,
    /// `int_F x^2 dH^{n-1}` as a rank-2 tensor.
    pub moment2: SymTensor,
    /// Indices into the owning body's vertex list.
    pub vertex_ids: Vec<usize>,
}

impl FacetData {
    /// `int_F x dH^{n-1}`.
    pub fn boundary_moment(&self) -> VecN {
        self.centroid * self.measure
    }
}

/// A full-dimensional convex polytope given by its vertices, with derived facet data.
#[derive(Clone, Debug)]
pub struct PolytopeBody {
    dim: usize,
    vertices: Vec<VecN>,
    facets: Vec<FacetData>,
    volume: f64,
    moment: VecN,
    psi2: SymTensor,
    radius: f64,
}

fn packed_to_tensor(dim: usize, packed: &[f64]) -> SymTensor {
    SymTensor::from_coeffs(2, dim, packed[..packed_len(dim)].to_vec()).expect("rank-2 shape")
}

impl PolytopeBody {
    /// Convex hull of `points`; interior and non-extreme points are discarded.
    pub fn from_points(points: &[VecN]) -> Result<Self> {
        let hull = convex_hull(points)?;
        Ok(Self::from_hull(hull))
    }

    fn from_hull(hull: Hull) -> Self {
        let n = hull.dim;
        let r = hull.radius;

        struct Group {
            normal: VecN,
            best_piece: f64,
            offset: f64,
            moments: Moments,
        }
        let mut groups: Vec<Group> = Vec::new();
        let mut cell_group = Vec::with_capacity(hull.cells.len());
        let mut body = Moments::zero(n);
        let mut cone = [VecN::zeros(n); MAX_DIM + 1];
        cone[0] = hull.interior;
        for cell in &hull.cells {
            let pts = hull.cell_points(cell);
            let piece = Moments::of_simplex(&pts[..n], cell.measure);
            let g = groups.iter().position(|g| {
                g.normal.dot(&cell.normal) > MERGE_DOT
                    && (g.offset - cell.offset).abs() <= MERGE_OFFSET_REL * r
            });
            let g = match g {
                Some(g) => g,
                None => {
                    groups.push(Group {
                        normal: cell.normal,
                        best_piece: 0.0,
                        offset: cell.offset,
                        moments: Moments::zero(n),
                    });
                    groups.len() - 1
                }
            };
            let grp = &mut groups[g];
            if cell.measure > grp.best_piece {
                grp.best_piece = cell.measure;
                grp.normal = cell.normal;
            }
            grp.moments.accumulate(&piece);
            cell_group.push(g);

            let height = cell.offset - cell.normal.dot(&hull.interior);
            cone[1..=n].copy_from_slice(&pts[..n]);
            body.accumulate(&Moments::of_simplex(
                &cone[..=n],
                height * cell.measure / n as f64,
            ));
        }

        // a hull point is a vertex iff the normals of the facets through it span R^n
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); hull.points.len()];
        for (cell, &g) in hull.cells.iter().zip(&cell_group) {
            for &v in &cell.verts[..n] {
                if !incident[v].contains(&g) {
                    incident[v].push(g);
                }
            }
        }
        let vertices: Vec<VecN> = hull
            .points
            .iter()
            .zip(&incident)
            .filter(|(_, gs)| {
                let normals: Vec<VecN> = gs.iter().map(|&g| groups[g].normal).collect();
                rank(&normals, VERTEX_RANK_TOL) == n
            })
            .map(|(p, _)| *p)
            .collect();

        let min_measure = 1e-14 * r.powi(n as i32 - 1);
        let facets = groups
            .into_iter()
            .filter(|g| g.moments.measure > min_measure)
            .map(|g| {
                let offset = vertices
                    .iter()
                    .map(|v| v.dot(&g.normal))
                    .fold(f64::NEG_INFINITY, f64::max);
                let vertex_ids = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.dot(&g.normal) >= offset - EPS_REL * r)
                    .map(|(i, _)| i)
                    .collect();
                FacetData {
                    normal: g.normal,
                    offset,
                    measure: g.moments.measure,
                    centroid: g.moments.centroid(),
                    moment2: packed_to_tensor(n, &g.moments.second),
                    vertex_ids,
                }
            })
            .collect();

        let mut psi2 = packed_to_tensor(n, &body.second);
        psi2 = psi2.scale(0.5);
        let mut mean = VecN::zeros(n);
        for v in &vertices {
            mean += *v;
        }
        mean = mean * (1.0 / vertices.len() as f64);
        let radius = vertices
            .iter()
            .fold(0.0f64, |m, v| m.max((*v - mean).norm()));
        PolytopeBody {
            dim: n,
            vertices,
            facets,
            volume: body.measure,
            moment: body.first,
            psi2,
            radius,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[VecN] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `z_{n+1}(K) = int_K x dx`.
    pub fn moment(&self) -> VecN {
        self.moment
    }

    /// `Psi_2(K) = (1/2) int_K x^2 dx`.
    pub fn psi2(&self) -> &SymTensor {
        &self.psi2
    }

    pub fn volume_and_moments(&self) -> (f64, VecN, SymTensor) {
        (self.volume, self.moment, self.psi2.clone())
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.measure).sum()
    }

    /// Largest distance from the vertex average to a vertex.
    pub fn circumradius(&self) -> f64 {
        self.radius
    }

    pub fn support(&self, u: &VecN) -> Result<f64> {
        u.require_dim(self.dim)?;
        if u.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Hull of all sums `v + p` for vertices `v` and generator points `p`.
    ///
    /// The generators may span a lower-dimensional set (a point, a segment).
    pub fn minkowski_sum_points(&self, generators: &[VecN]) -> Result<PolytopeBody> {
        if generators.is_empty() {
            return Err(Error::Invalid("empty generator set".into()));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * generators.len());
        for g in generators {
            g.require_dim(self.dim)?;
            for v in &self.vertices {
                pts.push(*v + *g);
            }
        }
        PolytopeBody::from_points(&pts)
    }

    pub fn minkowski_sum(&self, other: &PolytopeBody) -> Result<PolytopeBody> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        self.minkowski_sum_points(&other.vertices)
    }

    pub fn scale(&self, lambda: f64) -> Result<PolytopeBody> {
        if lambda.is_nan() || lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::NonPositiveScale(lambda));
        }
        let pts: Vec<VecN> = self.vertices.iter().map(|v| *v * lambda).collect();
        PolytopeBody::from_points(&pts)
    }

    pub fn translate(&self, t: &VecN) -> Result<PolytopeBody> {
        t.require_dim(self.dim)?;
        let pts: Vec<VecN> = self.vertices.iter().map(|v| *v + *t).collect();
        PolytopeBody::from_points(&pts)
    }

    /// Image under the linear map with the given matrix rows.
    pub fn linear_image(&self, rows: &[VecN]) -> Result<PolytopeBody> {
        if rows.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rows.len(),
            });
        }
        let pts: Vec<VecN> = self
            .vertices
            .iter()
            .map(|v| {
                let c: Vec<f64> = rows.iter().map(|r| r.dot(v)).collect();
                VecN::from_slice(&c)
            })
            .collect();
        PolytopeBody::from_points(&pts)
    }

    pub fn to_json(&self) -> BodyJson {
        BodyJson {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.to_vec()).collect(),
        }
    }
}

/// On-disk body description: `{"dim": n, "vertices": [[x1, ..., xn], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl BodyJson {
    pub fn to_body(&self) -> Result<PolytopeBody> {
        let pts = self
            .vertices
            .iter()
            .map(|c| {
                if c.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: c.len(),
                    });
                }
                VecN::new(c)
            })
            .collect::<Result<Vec<_>>>()?;
        PolytopeBody::from_points(&pts)
    }
}
