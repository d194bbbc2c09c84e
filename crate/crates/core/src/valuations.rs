//! Exact facet-sum evaluation of moment vectors, cone-volume tensors and
//! shadow functionals on polytopes.
//!
//! For a polytope the surface area measure is atomic: one atom per facet,
//! at the facet normal, with the facet's `(n-1)`-volume as mass.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{project, PolytopeBody};
use crate::tensor::{sym_power, SymTensor, VecN, MAX_RANK};

/// Facets with `|<normal, u>|` at or below this are treated as parallel to `u`.
pub const GRAZING: f64 = 1e-12;

/// One atom of the surface area measure, with the boundary integrals of its facet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceAtom {
    pub normal: VecN,
    pub area: f64,
    /// `h_K(normal)`.
    pub support_value: f64,
    /// `int_F x dH^{n-1}`.
    pub boundary_moment: VecN,
    /// `int_F x^2 dH^{n-1}`.
    pub boundary_moment2: SymTensor,
}

pub fn surface_atoms(body: &PolytopeBody) -> Vec<SurfaceAtom> {
    body.facets()
        .iter()
        .map(|f| SurfaceAtom {
            normal: f.normal,
            area: f.measure,
            support_value: f.offset,
            boundary_moment: f.boundary_moment(),
            boundary_moment2: f.moment2.clone(),
        })
        .collect()
}

/// `Psi_r(K) = (1/r!) int_K x^r dx` for `r <= 2`.
pub fn psi(body: &PolytopeBody, r: usize) -> Result<SymTensor> {
    match r {
        0 => Ok(SymTensor::scalar(body.dim(), body.volume())),
        1 => Ok(SymTensor::from_vector(&body.moment())),
        2 => Ok(body.psi2().clone()),
        _ => Err(Error::RankOverflow { rank: r, max: 2 }),
    }
}

/// `q_1(K) = (1/n) int_{bd K} x dH^{n-1}`.
pub fn q1(body: &PolytopeBody) -> VecN {
    let n = body.dim();
    let mut s = VecN::zeros(n);
    for f in body.facets() {
        s += f.boundary_moment();
    }
    s * (1.0 / n as f64)
}

fn check_rank(r: usize) -> Result<()> {
    if r > MAX_RANK {
        return Err(Error::RankOverflow {
            rank: r,
            max: MAX_RANK,
        });
    }
    Ok(())
}

/// `Upsilon_r(K) = (1/n) sum_F h_K(u_F) |F| u_F^r`.
pub fn upsilon(body: &PolytopeBody, r: usize) -> Result<SymTensor> {
    check_rank(r)?;
    let n = body.dim();
    let mut out = SymTensor::zeros(r, n)?;
    for f in body.facets() {
        out.add_scaled_in_place(f.offset * f.measure / n as f64, &sym_power(&f.normal, r)?);
    }
    Ok(out)
}

/// `Xi_r(K) = (1/n) sum_F |F| u_F^r`.
pub fn xi(body: &PolytopeBody, r: usize) -> Result<SymTensor> {
    check_rank(r)?;
    let n = body.dim();
    let mut out = SymTensor::zeros(r, n)?;
    for f in body.facets() {
        out.add_scaled_in_place(f.measure / n as f64, &sym_power(&f.normal, r)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeAtom {
    pub normal: VecN,
    pub mass: f64,
}

/// Cone-volume masses `(1/n) h_K(u_F) |F|` per facet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeVolume {
    pub atoms: Vec<ConeAtom>,
    pub total: f64,
    /// True when the origin is an interior point, so every mass is a genuine
    /// (nonnegative) cone volume rather than a signed one.
    pub origin_interior: bool,
}

pub fn cone_volume_atoms(body: &PolytopeBody) -> ConeVolume {
    let n = body.dim() as f64;
    let atoms: Vec<ConeAtom> = body
        .facets()
        .iter()
        .map(|f| ConeAtom {
            normal: f.normal,
            mass: f.offset * f.measure / n,
        })
        .collect();
    let total = atoms.iter().map(|a| a.mass).sum();
    let origin_interior = body.facets().iter().all(|f| f.offset > 0.0);
    ConeVolume {
        atoms,
        total,
        origin_interior,
    }
}

/// `z_n(K | u^perp)`, the `(n-1)`-volume moment of the projection, as a vector of `R^n`.
pub fn projected_moment(body: &PolytopeBody, u: &VecN) -> Result<VecN> {
    let proj = project(body, u)?;
    Ok(proj.embed(&proj.shadow().moment()))
}

/// `V_{n-1}(K | u^perp)` from the projected hull.
pub fn projected_volume(body: &PolytopeBody, u: &VecN) -> Result<f64> {
    Ok(project(body, u)?.shadow().volume())
}

/// Integrand family for [`shadow_functional`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyField {
    /// `f = 1`
    One,
    /// `f(x) = x`
    Identity,
    /// `f(x) = x^2`
    Square,
}

impl PolyField {
    pub const ALL: [PolyField; 3] = [PolyField::One, PolyField::Identity, PolyField::Square];

    pub fn name(self) -> &'static str {
        match self {
            PolyField::One => "1",
            PolyField::Identity => "x",
            PolyField::Square => "x^2",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            PolyField::One => 0,
            PolyField::Identity => 1,
            PolyField::Square => 2,
        }
    }

    /// `int_F f dH^{n-1}` for one atom.
    pub fn facet_integral(self, atom: &SurfaceAtom) -> SymTensor {
        match self {
            PolyField::One => SymTensor::scalar(atom.normal.dim(), atom.area),
            PolyField::Identity => SymTensor::from_vector(&atom.boundary_moment),
            PolyField::Square => atom.boundary_moment2.clone(),
        }
    }
}

impl std::str::FromStr for PolyField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "one" => Ok(PolyField::One),
            "x" | "identity" => Ok(PolyField::Identity),
            "x2" | "x^2" | "square" => Ok(PolyField::Square),
            _ => Err(Error::UnsupportedField(s.to_string())),
        }
    }
}

/// `F_f(K, u)`: integral over `K | u^perp` of `f` at the upper boundary point
/// in direction `u`, via the coarea formula as a sum over facets facing `u`.
pub fn shadow_functional(body: &PolytopeBody, u: &VecN, f: PolyField) -> Result<SymTensor> {
    u.require_dim(body.dim())?;
    u.require_unit()?;
    let n = body.dim();
    let mut out = SymTensor::zeros(f.rank(), n)?;
    for facet in body.facets() {
        let c = facet.normal.dot(u);
        if c <= GRAZING {
            continue;
        }
        let term = match f {
            PolyField::One => SymTensor::scalar(n, facet.measure),
            PolyField::Identity => SymTensor::from_vector(&facet.boundary_moment()),
            PolyField::Square => facet.moment2.clone(),
        };
        out.add_scaled_in_place(c, &term);
    }
    Ok(out)
}

/// `int_{bd K} f dH^{n-1}`.
pub fn boundary_integral(body: &PolytopeBody, f: PolyField) -> Result<SymTensor> {
    let n = body.dim();
    let mut out = SymTensor::zeros(f.rank(), n)?;
    for atom in surface_atoms(body) {
        out.add_scaled_in_place(1.0, &f.facet_integral(&atom));
    }
    Ok(out)
}
