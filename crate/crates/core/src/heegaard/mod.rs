//! The closed-manifold combinatorial engine: region-list generation,
//! diagram assembly on a genus-three surface, niceification by finger
//! moves, and the resulting hat-invariant computations.

mod diagram;
mod hfhat;
mod regions;

pub use diagram::{build_diagram, niceify, Diagram, NiceifyStats};
pub use hfhat::{
    contact_vanishes_nice, euler_characteristic, generator_count, generators, hf_invariants,
    intersection_matrix, invariant_factors, NiceInvariants,
};
pub use regions::{region_list, DerivedParams, RegionList};
