//! Computations with finite-dimensional quiver algebras of global dimension at
//! most two over finite fields: derived categories and Serre functors, the
//! graded algebra obtained as the tensor algebra of the second extension
//! bimodule, gradability of its modules, and certificates that the orbit
//! category misses modules of the cluster category.

pub mod algebra;
pub mod corpus;
pub mod density;
pub mod error;
pub mod gradability;
pub mod linalg;
pub mod repr;
pub mod serre;
pub mod tilde;

pub use error::{Error, Result};
