//! Exact-arithmetic valuations of half-open lattice polytopes and cones.
//!
//! The crate computes Ehrhart-type counting functions of regions `P \ B`
//! where `B` is a subcomplex of the boundary of a lattice polytope `P`,
//! classifies such subcomplexes topologically (weakly Cohen-Macaulay,
//! Cohen-Macaulay, homology manifold) via integral simplicial homology, and
//! mechanically verifies or refutes the associated reciprocity and duality
//! identities: Ehrhart-Macdonald reciprocity and its half-open refinements,
//! Stanley reciprocity for rational generating functions of pointed cones,
//! the Brianchon-Gram indicator identities and their relative versions, and
//! Brion-style vertex-cone decompositions relative to a forbidden subcomplex.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals, no
//! floating point anywhere. Everything is immutable after construction and
//! safe to use from multiple threads.

pub mod complex;
pub mod ehrhart;
mod error;
pub mod exact;
pub mod genfun;
pub mod geometry;
pub mod topology;

pub use error::{Error, Result};
