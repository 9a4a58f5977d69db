//! Bounded complexes of free `Z/n`-modules and the derived-category
//! operations on them.

mod chain;
mod homology;
mod homotopy;
mod koszul;
mod ops;

pub use chain::{ChainComplex, ChainMap, Homotopy, Violation, ViolationKind};
pub use homology::{homology, induced_homology_map, HomologyData, HomologyGroup, InducedHomology, InducedMap};
pub use homotopy::{
    decide_null_homotopy, is_contractible, is_quasi_iso, null_homotopy, HomotopyDecision, HomotopySystem,
};
pub use koszul::{koszul, KoszulBundle, KoszulContracts};
pub use ops::{biproduct, cone, direct_sum, dualize, suspend, tensor, tensor_layout, tensor_maps, Biproduct, Cone};

/// Multiplication by `r` on every degree of `x`.
pub fn scalar_map(x: &ChainComplex, r: u64) -> ChainMap {
    ChainMap::scalar(x, r)
}
