//! Representations: Hom spaces, endomorphism radicals, decomposition,
//! isomorphism and rigidity.

pub mod decompose;
pub mod hom;
pub mod iso;
pub mod module;

pub use decompose::{decompose, end_radical, indecomposable_iso, is_local, total_matrix, Decomposition, Summand};
pub use hom::{end, hom, HomSpace};
pub use iso::{is_isomorphic, is_rigid, IsoVerdict, Refutation};
pub use module::{ModMap, Module};
