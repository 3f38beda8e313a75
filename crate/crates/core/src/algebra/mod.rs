//! Quivers with relations, their path-algebra quotients, and homological
//! invariants computed from minimal projective resolutions.

pub mod build;
pub mod quiver;
pub mod resolution;

pub use build::{build_algebra, Algebra, SparseVec, DEFAULT_LENGTH_CAP};
pub use quiver::{AlgebraPresentation, Arrow, Path, Quiver, Relation};
pub use resolution::{
    cover_map, ext, global_dimension, injective, min_proj_resolution, proj_module, projective, projective_dimension,
    simple, top_generators, vector_to_elements, ExtSpace, GlobalDimension, ProjMap, Resolution, DEFAULT_GLDIM_CAP,
};
