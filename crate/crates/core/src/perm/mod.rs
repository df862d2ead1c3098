//! Permutation groups small enough to enumerate completely.

mod group;
mod permutation;
mod spec;

pub use group::{ClassPartition, ConjugacyClass, Fingerprint, PermGroup, DEFAULT_MAX_ELEMENTS};
pub use permutation::Permutation;
pub use spec::GroupSpec;
