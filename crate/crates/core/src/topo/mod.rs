//! Finite posets, G-posets, order complexes and integral homology.

mod check;
mod complex;
mod export;
mod poset;
pub mod snf;

pub use check::{poset_iso_check, quillen_pair_check, Comparison, Condition, IsoCheck, QuillenCertificate};
pub use complex::{homology, rational_betti, Homology, HomologyGroup, SimplicialComplex, DEFAULT_MAX_SIMPLICES};
pub use export::{poset_dot, poset_json};
pub use poset::{GPoset, OrbitPoset, Poset};
pub use snf::{invariant_factors, smith_normal_form, SparseIntMatrix, Snf};

/// Labels `"0"`, `"1"`, … for quick construction.
pub fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
