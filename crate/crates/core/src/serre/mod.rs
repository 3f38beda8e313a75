//! The bounded derived category through complexes of projectives: Serre
//! functor, derived Hom and fractional Calabi-Yau orbits.

pub mod complex;
pub mod cy;
pub mod functor;
pub mod hom;

pub use complex::{local_inverse, proj_resolve, proj_resolve_capped, regular, ProjComplex};
pub use cy::{default_caps, fractional_cy_search, is_indecomposable, CySearch};
pub use functor::{injective_sum, nakayama, projective_replacement, s2, serre, ModComplex, Opposite};
pub use hom::{complexes_isomorphic, derived_hom, is_chain_map, proj_map_is_iso, ComplexIso, DerivedHom, ISO_TRIES};
