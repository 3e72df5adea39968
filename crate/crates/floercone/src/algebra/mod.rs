//! Exact linear algebra over the two-element field and exact homology of
//! complexes built from towers `T^+ = F[U, U^-1] / U F[U]`.
//!
//! Everything here is immutable after construction and purely functional;
//! values can be shared freely across threads.

mod bits;
mod complex;
mod f2;
mod tower;

pub use complex::{
    chain_homology_f2, induced_map_ranks, ComplexError, GradedComplex, GradedVectorSpace, Homology,
};
pub use f2::{f2_rank, F2Matrix};
pub use tower::{tower_cone_homology, GradedModule, MonomialTowerMap, TowerError};
