//! Exact moment polytopes of trivalent graphs.
//!
//! A trivalent graph encodes a pants decomposition of a closed surface. Each
//! vertex (trinion) contributes a block of "quantum triangle" inequalities on
//! the coordinates of its three incident edges; together with the unit cube
//! they cut out the moment polytope of the graph. This crate builds those
//! polytopes with exact rational arithmetic, checks their combinatorics and
//! Delzant smoothness, and counts level-k lattice points against independent
//! Verlinde-number oracles.

pub mod error;
pub mod graphs;
pub mod linalg;
pub mod moment;
pub mod polyhedra;
pub mod quantization;
pub mod smoothness;
pub mod verify;

pub use error::{Error, Result};
pub use graphs::{Bipartition, TrivalentGraph};
pub use moment::MomentPolytope;
pub use polyhedra::{HalfspaceSystem, Lattice, Polytope, RationalPoint, VertexSystem};
pub use quantization::{CountMode, CountReport};
pub use smoothness::DelzantReport;

/// Arbitrary-precision rational used for every coordinate.
pub type Rational = num::BigRational;
