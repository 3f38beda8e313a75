//! Gradability of modules over graded algebras.

pub mod homogenize;
pub mod oracle;
pub mod twist;
pub mod verdict;

pub use homogenize::{homogenize_map, GradedProjMap, Homogenization, Homogenized, StuckReport};
pub use oracle::{brute_force_grading, degree_operators};
pub use twist::{canonical_twist_iso, extend_algebra, extend_map, extend_module, twist};
pub use verdict::{extract_grading, is_gradable, rigid_implies_gradable_check, Gradability, GradabilityVerdict, RigidityReport};
