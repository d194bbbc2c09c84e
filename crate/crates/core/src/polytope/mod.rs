//! Full-dimensional convex polytopes: hulls, facet data, exact moments,
//! Minkowski sums and projections.

mod body;
pub mod generators;
mod hull;
mod projection;
mod simplex;

pub use body::{BodyJson, FacetData, PolytopeBody};
pub use projection::{orthonormal_complement, project, EmbeddedProjection};
