//! Heegaard Floer homology of integer Dehn surgeries on knots in the
//! three-sphere, computed through the mapping cone formula, together with
//! obstructions to a surgery being a reducible manifold.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! knot input ──> staircase model ──> truncated cone ──> graded homology ──> obstruction report
//!   (knotio)       (staircase)           (cone)            (algebra)           (obstruct)
//! ```
//!
//! Knots enter either as torus-knot parameters, as an Alexander polynomial
//! (for L-space knots, which are modelled by their staircase complex), or as
//! an explicit bifiltered chain complex read from a JSON file.  Every graded
//! computation is carried out exactly: homology over the two-element field by
//! Gaussian elimination, `HF^+` by kernel/cokernel classification of monomial
//! maps between towers, and d-invariants as exact rationals.
//!
//! Wherever a quantity admits two independent computations (a closed form and
//! a direct chain-level engine) both are implemented, and the public entry
//! points cross-check them.

// Slope bounds are written in their mathematical form `1 < |p| <= 2g-1`.
#![allow(clippy::int_plus_one, clippy::manual_is_multiple_of)]

pub mod algebra;
pub mod cli;
pub mod cone;
pub mod knotio;
pub mod obstruct;
pub mod staircase;

pub use knotio::{BifilteredComplex, KnotSpec, SymmetricLaurent};
pub use staircase::StaircaseKnot;
