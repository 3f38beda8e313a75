//! Non-density certificates from oriented cycles.

pub mod relations;
pub mod witness;
pub mod zigzag;

pub use relations::{find_relation_on_path, minimal_relation_pairs, RelationOnPath, RelationSequence};
pub use witness::{
    certify_cycle, certify_not_dense, certify_not_dense_capped, unwrapped_witness, wrap_witness, zigzag_presentation,
    DensityCertificate, DensityOutcome,
};
pub use zigzag::{cycle_cover, verify_zigzag, Cover, ZigzagData, ZigzagReport};
