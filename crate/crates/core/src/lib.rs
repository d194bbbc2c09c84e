//! Tensor valuations of convex polytopes and quadrature checks of
//! Cauchy-type projection formulas.
//!
//! The crate computes volume and moment tensors, boundary moments, the
//! cone-volume tensors `Upsilon_r` and the translation-invariant tensors
//! `Xi_r` exactly as finite facet sums, and checks integral-geometric
//! identities against independent spherical quadrature.

pub mod error;
pub mod harness;
mod linalg;
pub mod mixed;
pub mod polytope;
pub mod quadrature;
pub mod tensor;
pub mod valuations;

pub use error::{Error, Result};
pub use polytope::{generators, project, BodyJson, EmbeddedProjection, FacetData, PolytopeBody};
pub use tensor::{kappa, metric_tensor, omega, sym_power, SymTensor, VecN};
