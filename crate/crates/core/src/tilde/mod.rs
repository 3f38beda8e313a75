//! The graded algebra attached to an algebra of global dimension at most two,
//! graded modules over it, and the tensor-power oracle for its graded pieces.

pub mod bimodule;
pub mod construct;
pub mod graded;

pub use bimodule::{ext_bimodule, tensor_power_dims, Bimodule};
pub use construct::{
    build_tilde, derived_degree_dims, is_tau2_finite, tensor_dims_agree, tilde_presentation, GradedAlgebra, PairDims, Tau2Verdict,
    DEFAULT_DEGREE_CAP,
};
pub use graded::{graded_hom, graded_hom_shifts, GradedModule};
